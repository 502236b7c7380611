#pragma once

#include <cstdint>

#include "quantconvex/caratheodory.hpp"
#include "quantconvex/core/instance.hpp"
#include "quantconvex/helly.hpp"
#include "quantconvex/steinitz.hpp"
#include "quantconvex/tverberg.hpp"

namespace qc {

struct SolveOptions {
  std::uint64_t seed = 0;
  std::uint64_t budget = 10'000'000;
  Scalar precision = default_precision();
};

namespace detail {

inline const Scalar& need_epsilon(const Instance& in) {
  require(in.epsilon.has_value(), ErrorCode::precondition, "this kind needs an epsilon");
  return *in.epsilon;
}

inline RadiusTarget radius_target(const Instance& in) {
  RadiusTarget t;
  if (in.epsilon) {
    t.variant = SizeVariant::eps;
    t.epsilon = *in.epsilon;
    require(in.n_prime.has_value(), ErrorCode::precondition, "the epsilon variant needs n_prime");
    t.n_prime = *in.n_prime;
  }
  return t;
}

}  // namespace detail

/// Runs the pipeline matching the instance kind and returns its certificate.
inline Certificate solve(const Instance& in, const SolveOptions& opt = {}) {
  switch (in.kind) {
    case CertificateKind::caratheodory_selection: {
      require(in.target.has_value(), ErrorCode::precondition, "selection instance needs a target");
      const PointFamily f(in.classes);
      const RainbowSelection sel = in.anchor ? very_colorful_caratheodory(f, *in.target, *in.anchor) : colorful_caratheodory(f, *in.target);
      return selection_certificate(f, *in.target, sel, in.anchor);
    }
    case CertificateKind::steinitz_ball: {
      const PointFamily f(in.classes);
      return in.epsilon ? steinitz_ball_eps(f, *in.epsilon, opt.precision).certificate
                        : colored_steinitz_ball(f, opt.precision).certificate;
    }
    case CertificateKind::steinitz_volume:
      return thrifty_steinitz_volume(PointFamily(in.classes), VPolytope(in.dim, in.body), detail::need_epsilon(in)).certificate;
    case CertificateKind::helly_volume: return extract_volume_witness(in.halfspaces, detail::need_epsilon(in)).certificate;
    case CertificateKind::helly_diameter: return extract_diameter_witness(in.halfspaces, detail::need_epsilon(in)).certificate;
    case CertificateKind::colorful_helly: return colorful_helly_search(in.families, detail::need_epsilon(in)).certificate;
    case CertificateKind::tverberg: {
      require(in.parts.has_value(), ErrorCode::precondition, "tverberg instance needs parts");
      if (in.classic_tverberg()) {
        return tverberg_certificate(in.points, tverberg_partition(in.points, *in.parts, TverbergEngine::automatic, opt.budget));
      }
      QuantTverbergOptions q;
      q.seed = opt.seed;
      q.budget = opt.budget;
      q.precision = opt.precision;
      return quantitative_tverberg(in.sets, *in.parts, detail::radius_target(in), {}, q).certificate;
    }
    case CertificateKind::colorful_tverberg: {
      require(in.parts.has_value(), ErrorCode::precondition, "colorful-tverberg instance needs parts");
      QuantTverbergOptions q;
      q.seed = opt.seed;
      q.budget = opt.budget;
      q.precision = opt.precision;
      return colorful_quantitative_tverberg(in.colors, *in.parts, detail::radius_target(in), q).certificate;
    }
  }
  fail(ErrorCode::internal, "unknown certificate kind");
}

}  // namespace qc
