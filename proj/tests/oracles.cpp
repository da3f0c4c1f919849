#include "oracles.hpp"

#include <algorithm>
#include <set>

namespace oracle {

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

Operator trace_out_second(const Operator& x, int da, int db) {
  Operator out = Operator::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += x(i * db + k, j * db + k);
  return out;
}

Operator trace_out_first(const Operator& x, int da, int db) {
  Operator out = Operator::Zero(db, db);
  for (int k = 0; k < db; ++k)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i) out(k, l) += x(i * db + k, i * db + l);
  return out;
}

Operator yen(const Frame& frame, const UnitaryRep& sys, const Operator& a) {
  const int n = frame.dim() * sys.dim();
  Operator out = Operator::Zero(n, n);
  for (int g = 0; g < frame.group().order(); ++g) {
    const Operator u = sys.matrix(g);
    out += kron(frame.effect(g), u * a * u.adjoint());
  }
  return out;
}

Operator yen_predual(const Frame& frame, const UnitaryRep& sys, const Operator& omega) {
  const int d = sys.dim();
  Operator out(d, d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      Operator unit = Operator::Zero(d, d);
      unit(k, l) = 1.0;
      const Operator y = yen(frame, sys, unit);
      Complex t = 0.0;
      for (Eigen::Index i = 0; i < y.rows(); ++i)
        for (Eigen::Index j = 0; j < y.cols(); ++j) t += omega(j, i) * y(i, j);
      out(l, k) = t;
    }
  }
  return out;
}

RealVector realify(const Operator& a) {
  const Eigen::Index n = a.size();
  RealVector v(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v(k) = a.data()[k].real();
    v(n + k) = a.data()[k].imag();
  }
  return v;
}

namespace {

RealMatrix realified(const std::vector<Operator>& ops) {
  RealMatrix m(2 * ops.front().size(), static_cast<Eigen::Index>(ops.size()));
  for (size_t j = 0; j < ops.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = realify(ops[j]);
  return m;
}

}  // namespace

int span_rank(const std::vector<Operator>& ops, double threshold) {
  if (ops.empty()) return 0;
  Eigen::FullPivLU<RealMatrix> lu(realified(ops));
  lu.setThreshold(threshold);
  return static_cast<int>(lu.rank());
}

std::vector<Operator> kernel_basis(int dim, const std::vector<Operator>& generators) {
  // Pairing matrix tr[F_i B_j] against the Hermitian basis; real for Hermitian operands.
  const HermitianBasis basis(dim);
  std::vector<Operator> all = basis.elements();
  RealMatrix pair(static_cast<Eigen::Index>(generators.size()), static_cast<Eigen::Index>(all.size()));
  for (size_t i = 0; i < generators.size(); ++i)
    for (size_t j = 0; j < all.size(); ++j)
      pair(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (generators[i].array() * all[j].transpose().array()).sum().real();
  std::vector<Operator> out;
  if (generators.empty()) return all;
  Eigen::FullPivLU<RealMatrix> lu(pair);
  lu.setThreshold(1e-10);
  const RealMatrix ker = lu.kernel();
  if (lu.rank() == pair.cols()) return out;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) out.push_back(basis.from_coordinates(ker.col(c)));
  return out;
}

double pairing(const std::vector<Operator>& generators, const Operator& a, const Operator& b) {
  const Operator diff = a - b;
  double worst = 0.0;
  for (const auto& f : generators) {
    Complex t = 0.0;
    for (Eigen::Index i = 0; i < diff.rows(); ++i)
      for (Eigen::Index j = 0; j < diff.cols(); ++j) t += diff(i, j) * f(j, i);
    worst = std::max(worst, std::abs(t));
  }
  return worst;
}

int intersection_rank(const EffectContext& a, const EffectContext& b) {
  const RealMatrix sum = a.projector() + b.projector();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sum, Eigen::EigenvaluesOnly);
  int count = 0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (solver.eigenvalues()(i) > 2.0 - 1e-8) ++count;
  }
  return count;
}

std::vector<std::vector<int>> cosets(const FiniteGroup& group, const std::vector<int>& subgroup) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  for (int g = 0; g < group.order(); ++g) {
    std::vector<int> c;
    for (int h : subgroup) c.push_back(group.mul(g, h));
    std::sort(c.begin(), c.end());
    if (seen.insert(c).second) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> closure(const FiniteGroup& group, const std::vector<int>& generators) {
  std::set<int> s = {group.identity()};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> current(s.begin(), s.end());
    for (int a : current) {
      for (int g : generators) {
        if (s.insert(group.mul(a, g)).second) grew = true;
      }
    }
  }
  return {s.begin(), s.end()};
}

}  // namespace oracle

namespace gen {

std::vector<qrf::FiniteGroup> suite_groups() {
  std::vector<qrf::FiniteGroup> out;
  for (const auto& name : qrf::suite_group_names()) out.push_back(qrf::builtin_group(name));
  return out;
}

int element(const qrf::FiniteGroup& g, Rng& rng) {
  return std::uniform_int_distribution<int>(0, g.order() - 1)(rng);
}

std::vector<int> subset(const qrf::FiniteGroup& g, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x) {
    if (coin(rng)) out.push_back(x);
  }
  return out;
}

}  // namespace gen
