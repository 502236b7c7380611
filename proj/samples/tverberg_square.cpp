// Radon partition of the unit square's vertices plus its certificate.

#include <iostream>

#include "quantconvex/quantconvex.hpp"

int main() {
  qc::Instance in;
  in.kind = qc::CertificateKind::tverberg;
  in.dim = 2;
  in.points = {qc::Point{0, 0}, qc::Point{1, 0}, qc::Point{1, 1}, qc::Point{0, 1}};
  in.parts = 2;

  const qc::Certificate c = qc::oracle::certify(qc::solve(in), in);
  std::cout << qc::json::dump(qc::json::render(c));
  std::cerr << "common point " << qc::json::render(*c.claim.target).dump() << ", oracle "
            << (c.verified ? "PASS" : "FAIL") << '\n';
  return c.verified ? 0 : 1;
}
