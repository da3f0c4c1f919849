#include "qrf/opequiv.hpp"

#include <algorithm>

#include "qrf/error.hpp"

namespace qrf {

namespace {

// Orthonormal basis of the column span of m, cut at kRankCutoff * sigma_max.
RealMatrix orthonormal_span(const RealMatrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return RealMatrix(m.rows(), 0);
  Eigen::JacobiSVD<RealMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return RealMatrix(m.rows(), 0);
  const double cutoff = kRankCutoff * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

void check_dim(const EffectContext& ctx, const Operator& a, const char* op) {
  if (a.rows() != ctx.dim() || a.cols() != ctx.dim()) {
    throw ArgumentError(std::string(op) + ": operator dimension " + std::to_string(a.rows()) +
                        " does not match context dimension " + std::to_string(ctx.dim()));
  }
}

}  // namespace

EffectContext EffectContext::from_generators(int dim, std::vector<Operator> generators,
                                             bool keep_generators) {
  if (dim < 1) throw ArgumentError("effect context: dimension must be positive");
  const HermitianBasis basis(dim);
  RealMatrix m(dim * dim, static_cast<Eigen::Index>(generators.size()));
  for (size_t k = 0; k < generators.size(); ++k) {
    const auto& g = generators[k];
    if (g.rows() != dim || g.cols() != dim) {
      throw ArgumentError("effect context: generator " + std::to_string(k) +
                          " has the wrong dimension");
    }
    if (!is_hermitian(g)) {
      throw ArgumentError("effect context: generator " + std::to_string(k) + " is not Hermitian");
    }
    m.col(static_cast<Eigen::Index>(k)) = basis.coordinates(g);
  }
  const int count = static_cast<int>(generators.size());
  if (!keep_generators) generators.clear();
  return EffectContext(dim, orthonormal_span(m), std::move(generators), count);
}

EffectContext EffectContext::from_span_basis(int dim, RealMatrix basis, int generator_count) {
  if (basis.rows() != dim * dim) throw ArgumentError("effect context: basis has the wrong length");
  return EffectContext(dim, std::move(basis), {}, generator_count);
}

std::vector<Operator> EffectContext::span_operators() const {
  const HermitianBasis basis(dim_);
  std::vector<Operator> out;
  for (Eigen::Index k = 0; k < basis_.cols(); ++k) out.push_back(basis.from_coordinates(basis_.col(k)));
  return out;
}

RealMatrix EffectContext::projector() const { return basis_ * basis_.transpose(); }

RealVector EffectContext::coordinates(const Operator& a) const {
  check_dim(*this, a, "context coordinates");
  return HermitianBasis(dim_).coordinates(a);
}

Operator EffectContext::project(const Operator& a) const {
  const RealVector c = coordinates(a);
  return HermitianBasis(dim_).from_coordinates(basis_ * (basis_.transpose() * c));
}

double EffectContext::residual(const Operator& a) const {
  const RealVector c = coordinates(a);
  return (c - basis_ * (basis_.transpose() * c)).norm();
}

bool EffectContext::contains(const Operator& a, double tol) const { return residual(a) <= tol; }

namespace {

void require_hermitian(const Operator& a, const char* op) {
  if (!is_hermitian(a, 1e-8)) {
    throw ArgumentError(std::string(op) + ": operator is not Hermitian");
  }
}

}  // namespace

double EffectContext::pairing_deviation(const Operator& a, const Operator& b) const {
  check_dim(*this, a, "pairing_deviation");
  check_dim(*this, b, "pairing_deviation");
  require_hermitian(a, "pairing_deviation");
  require_hermitian(b, "pairing_deviation");
  if (rank() == 0) return 0.0;
  const RealVector diff = HermitianBasis(dim_).coordinates(a - b);
  return (basis_.transpose() * diff).cwiseAbs().maxCoeff();
}

double EffectContext::generator_deviation(const Operator& a, const Operator& b) const {
  check_dim(*this, a, "generator_deviation");
  check_dim(*this, b, "generator_deviation");
  const Operator diff = a - b;
  double worst = 0.0;
  for (const auto& f : generators_) worst = std::max(worst, std::abs(trace_product(diff, f)));
  return worst;
}

bool equivalent(const EffectContext& ctx, const Operator& a, const Operator& b, double tol) {
  return ctx.pairing_deviation(a, b) <= tol;
}

Operator canonical_repr(const EffectContext& ctx, const Operator& a) {
  require_hermitian(a, "canonical_repr");
  return ctx.project(a);
}

Operator g_twirl(const UnitaryRep& rep, const Operator& a) {
  if (a.rows() != rep.dim() || a.cols() != rep.dim()) {
    throw ArgumentError("g_twirl: operator dimension does not match the representation");
  }
  Operator sum = Operator::Zero(rep.dim(), rep.dim());
  for (int g = 0; g < rep.group().order(); ++g) sum += rep.act_op(g, a);
  return sum / static_cast<double>(rep.group().order());
}

Operator g_twirl_predual(const UnitaryRep& rep, const Operator& rho) {
  if (rho.rows() != rep.dim() || rho.cols() != rep.dim()) {
    throw ArgumentError("g_twirl_predual: operator dimension does not match the representation");
  }
  Operator sum = Operator::Zero(rep.dim(), rep.dim());
  for (int g = 0; g < rep.group().order(); ++g) sum += rep.act_state(g, rho);
  return sum / static_cast<double>(rep.group().order());
}

EffectContext invariant_subspace(const UnitaryRep& rep) {
  // The twirl is an HS-orthogonal projector on Hermitian operators; its
  // coordinate matrix has eigenvalues 0 and 1, and the fixed space is the
  // eigenspace of 1.
  const int d = rep.dim();
  const HermitianBasis basis(d);
  RealMatrix twirl(basis.size(), basis.size());
  for (int k = 0; k < basis.size(); ++k) twirl.col(k) = basis.coordinates(g_twirl(rep, basis.element(k)));
  const RealMatrix sym = (twirl + twirl.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()(i) > 0.5) keep.push_back(i);
  }
  RealMatrix span(basis.size(), static_cast<Eigen::Index>(keep.size()));
  for (size_t j = 0; j < keep.size(); ++j) span.col(static_cast<Eigen::Index>(j)) = solver.eigenvectors().col(keep[j]);
  return EffectContext::from_span_basis(d, std::move(span), basis.size());
}

EffectContext framed_subspace(const FactorShape& shape, const std::vector<FramedFactor>& framed) {
  std::vector<int> positions;
  for (const auto& f : framed) {
    if (f.position < 0 || f.position >= shape.size()) {
      throw ArgumentError("framed_subspace: factor position out of range");
    }
    if (f.povm->dim() != shape.dims[f.position]) {
      throw ArgumentError("framed_subspace: POVM dimension does not match its factor");
    }
    positions.push_back(f.position);
  }
  std::vector<int> order = positions;
  for (int i = 0; i < shape.size(); ++i) {
    if (std::find(positions.begin(), positions.end(), i) == positions.end()) order.push_back(i);
  }
  const int rest_dim = shape.without(positions).total();
  const HermitianBasis rest(rest_dim);

  // All products of framed effects, in the listed factor order.
  std::vector<Operator> products = {Operator::Identity(1, 1)};
  for (const auto& f : framed) {
    std::vector<Operator> next;
    for (const auto& p : products) {
      for (const auto& e : f.povm->effects()) next.push_back(kron(p, e));
    }
    products = std::move(next);
  }
  std::vector<Operator> generators;
  generators.reserve(products.size() * rest.size());
  for (const auto& p : products) {
    for (int k = 0; k < rest.size(); ++k) {
      generators.push_back(from_factor_order(kron(p, rest.element(k)), shape, order));
    }
  }
  return EffectContext::from_generators(shape.total(), std::move(generators));
}

EffectContext framed_subspace(const Frame& frame, int system_dim) {
  return framed_subspace(FactorShape{frame.dim(), system_dim}, {{0, &frame.povm()}});
}

EffectContext intersect(const EffectContext& a, const EffectContext& b) {
  if (a.dim() != b.dim()) throw ArgumentError("intersect: contexts of different dimension");
  const int count = a.generator_count() + b.generator_count();
  const RealMatrix& qa = a.span_basis();
  const RealMatrix& qb = b.span_basis();
  if (qa.cols() == 0 || qb.cols() == 0) {
    return EffectContext::from_span_basis(a.dim(), RealMatrix(qa.rows(), 0), count);
  }
  // Residual of each direction of span(a) against span(b).
  const RealMatrix residual = qa - qb * (qb.transpose() * qa);
  Eigen::JacobiSVD<RealMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(residual, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= kRankCutoff) keep.push_back(i);
  }
  RealMatrix span(qa.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t j = 0; j < keep.size(); ++j) {
    span.col(static_cast<Eigen::Index>(j)) = qa * svd.matrixV().col(keep[j]);
  }
  return EffectContext::from_span_basis(a.dim(), std::move(span), count);
}

double inclusion_residual(const EffectContext& a, const EffectContext& b) {
  if (a.dim() != b.dim()) throw ArgumentError("inclusion_residual: contexts of different dimension");
  if (a.rank() == 0) return 0.0;
  const RealMatrix& qa = a.span_basis();
  const RealMatrix& qb = b.span_basis();
  const RealMatrix residual = qb.cols() == 0 ? qa : RealMatrix(qa - qb * (qb.transpose() * qa));
  return residual.colwise().norm().maxCoeff();
}

}  // namespace qrf
