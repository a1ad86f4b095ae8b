#include "shkit/block_operator.hpp"

#include <cmath>

#include "shkit/error.hpp"

namespace shkit {

MetricSpace lift_metric(const MetricSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  ComplexMatrix lifted = ComplexMatrix::Zero(2 * n, 2 * n);
  lifted.topLeftCorner(n, n) = space.metric();
  lifted.bottomRightCorner(n, n) = space.metric();
  return make_space(lifted, space.rtol());
}

ComplexMatrix assemble_matrix(const ComplexMatrix& p, const ComplexMatrix& q, const ComplexMatrix& r,
                              const ComplexMatrix& s) {
  const Eigen::Index n = p.rows();
  for (const ComplexMatrix* b : {&p, &q, &r, &s}) {
    if (b->rows() != n || b->cols() != n) {
      throw Error(ErrorKind::DimensionMismatch, "blocks must all be square of the same order");
    }
  }
  ComplexMatrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = p;
  m.topRightCorner(n, n) = q;
  m.bottomLeftCorner(n, n) = r;
  m.bottomRightCorner(n, n) = s;
  return m;
}

std::array<ComplexMatrix, 4> dissect_matrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw Error(ErrorKind::DimensionMismatch, "dissect needs a square matrix of even order");
  }
  const Eigen::Index n = m.rows() / 2;
  return {m.topLeftCorner(n, n), m.topRightCorner(n, n), m.bottomLeftCorner(n, n),
          m.bottomRightCorner(n, n)};
}

Lifting::Lifting(MetricSpace base) : base_(std::move(base)), lifted_(lift_metric(base_)) {}

BlockOperator Lifting::assemble(const ComplexMatrix& p, const ComplexMatrix& q, const ComplexMatrix& r,
                                const ComplexMatrix& s) const {
  return assemble(CompatibleOperator::make(base_, p, "block P (0,0)"),
                  CompatibleOperator::make(base_, q, "block Q (0,1)"),
                  CompatibleOperator::make(base_, r, "block R (1,0)"),
                  CompatibleOperator::make(base_, s, "block S (1,1)"));
}

BlockOperator Lifting::assemble(const CompatibleOperator& p, const CompatibleOperator& q,
                                const CompatibleOperator& r, const CompatibleOperator& s) const {
  for (const CompatibleOperator* b : {&p, &q, &r, &s}) {
    if (!b->space().same_as(base_)) {
      throw Error(ErrorKind::DimensionMismatch, "block does not live on the lifting's base space");
    }
  }
  CompatibleOperator whole =
      trusted_operator(lifted_, assemble_matrix(p.matrix(), q.matrix(), r.matrix(), s.matrix()));
  return BlockOperator({p, q, r, s}, std::move(whole));
}

BlockOperator Lifting::sharp_transpose(const BlockOperator& t) const {
  return assemble(sharp(t.p()), sharp(t.r()), sharp(t.q()), sharp(t.s()));
}

BlockOperator assemble(const MetricSpace& space, const ComplexMatrix& p, const ComplexMatrix& q,
                       const ComplexMatrix& r, const ComplexMatrix& s) {
  return Lifting(space).assemble(p, q, r, s);
}

std::vector<NamedUnitary> proof_unitaries(const Lifting& lifting) {
  const MetricSpace& base = lifting.base();
  const CompatibleOperator o = CompatibleOperator::zero(base);
  const CompatibleOperator i = CompatibleOperator::identity(base);
  const Complex h(1.0 / std::sqrt(2.0), 0.0);
  const Complex ih(0.0, 1.0 / std::sqrt(2.0));

  std::vector<NamedUnitary> out;
  out.push_back({"swap", "(O I; I O)", lifting.assemble(o, i, i, o)});
  out.push_back({"quarter_turn", "(O -I; I O)", lifting.assemble(o, -i, i, o)});
  out.push_back({"quarter_turn_inverse", "(O I; -I O)", lifting.assemble(o, i, -i, o)});
  out.push_back({"sign_flip", "(I O; O -I)", lifting.assemble(i, o, o, -i)});
  out.push_back({"mix_plus", "(1/sqrt2)(I I; -I I)", lifting.assemble(h * i, h * i, -h * i, h * i)});
  out.push_back({"mix_minus", "(1/sqrt2)(I -I; I I)", lifting.assemble(h * i, -h * i, h * i, h * i)});
  out.push_back({"mix_imaginary", "(1/sqrt2)(I iI; iI I)", lifting.assemble(h * i, ih * i, ih * i, h * i)});
  return out;
}

std::vector<NamedUnitary> proof_unitaries(const MetricSpace& space) {
  return proof_unitaries(Lifting(space));
}

}  // namespace shkit
