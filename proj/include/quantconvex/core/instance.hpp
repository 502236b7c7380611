#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quantconvex/core/types.hpp"

namespace qc {

/// Source data a certificate is checked against. `kind` names the certificate
/// kind the instance is meant for; only the fields that kind uses are set.
///
///   carathedory-selection  classes, target, optional anchor
///   steinitz-ball          classes, optional epsilon (absent: the fixed-radius version)
///   steinitz-volume        classes, body (vertices of K), epsilon
///   helly-volume           halfspaces, epsilon
///   helly-diameter         halfspaces, epsilon
///   colorful-helly         families, epsilon
///   tverberg               points + parts (classic), or sets + parts with optional epsilon, n_prime
///   colorful-tverberg      colors + parts, optional epsilon, n_prime
struct Instance {
  CertificateKind kind = CertificateKind::caratheodory_selection;
  int dim = 0;
  std::vector<std::vector<Point>> classes;
  std::vector<Point> body;
  std::vector<Point> points;
  std::vector<std::vector<Point>> sets;
  std::vector<std::vector<std::vector<Point>>> colors;
  std::vector<HalfSpace> halfspaces;
  std::vector<std::vector<HalfSpace>> families;
  std::optional<Point> target;
  std::optional<Point> anchor;
  std::optional<Scalar> epsilon;
  std::optional<std::size_t> parts;
  std::optional<std::size_t> n_prime;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> construction;  // how a generator built the instance

  [[nodiscard]] bool classic_tverberg() const { return kind == CertificateKind::tverberg && !points.empty(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

}  // namespace qc
