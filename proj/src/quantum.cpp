#include "qrf/quantum.hpp"

#include <cmath>

#include "qrf/error.hpp"

namespace qrf {

namespace {

constexpr double kEntryCutoff = 1e-12;

// Column-wise monomial form of a unitary, if it has one.
std::optional<std::pair<std::vector<int>, std::vector<Complex>>> monomial_form(const Operator& u,
                                                                                double tol) {
  const int d = static_cast<int>(u.rows());
  std::vector<int> row(d, -1);
  std::vector<Complex> phase(d);
  std::vector<char> used(d, 0);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      if (std::abs(u(i, j)) <= kEntryCutoff) continue;
      if (row[j] >= 0 || used[i]) return std::nullopt;
      row[j] = i;
      phase[j] = u(i, j);
      used[i] = 1;
    }
    if (row[j] < 0 || std::abs(std::abs(phase[j]) - 1.0) > tol) return std::nullopt;
  }
  return std::make_pair(std::move(row), std::move(phase));
}

}  // namespace

UnitaryRep UnitaryRep::from_matrices(const FiniteGroup& group, std::vector<Operator> matrices,
                                     RepKind kind, double tol) {
  if (static_cast<int>(matrices.size()) != group.order()) {
    throw ConstructionError("representation needs one matrix per group element (" +
                            std::to_string(group.order()) + "), got " +
                            std::to_string(matrices.size()));
  }
  const int d = static_cast<int>(matrices.front().rows());
  if (d < 1) throw ConstructionError("representation dimension must be positive");
  for (int g = 0; g < group.order(); ++g) {
    if (matrices[g].rows() != d || matrices[g].cols() != d) {
      throw ConstructionError("representation matrix " + std::to_string(g) +
                              " has inconsistent dimension");
    }
  }

  UnitaryRep rep;
  rep.group_ = group;
  rep.dim_ = d;
  rep.kind_ = kind;

  std::vector<Monomial> mono;
  mono.reserve(group.order());
  for (const auto& m : matrices) {
    auto form = monomial_form(m, tol);
    if (!form) break;
    mono.push_back({std::move(form->first), std::move(form->second)});
  }
  if (static_cast<int>(mono.size()) == group.order()) {
    rep.monomial_ = std::move(mono);
  } else {
    rep.dense_ = std::move(matrices);
  }

  // Validation. Monomial reps compare row maps and phases directly.
  const int e = group.identity();
  if (rep.is_monomial()) {
    for (int j = 0; j < d; ++j) {
      if (rep.monomial_[e].row[j] != j || std::abs(rep.monomial_[e].phase[j] - 1.0) > tol) {
        throw ConstructionError("representation: U(e) is not the identity");
      }
    }
    for (int g = 0; g < group.order(); ++g) {
      for (int h = 0; h < group.order(); ++h) {
        const auto& ug = rep.monomial_[g];
        const auto& uh = rep.monomial_[h];
        const auto& ugh = rep.monomial_[group.mul(g, h)];
        for (int j = 0; j < d; ++j) {
          const int mid = uh.row[j];
          if (ug.row[mid] != ugh.row[j] ||
              std::abs(ug.phase[mid] * uh.phase[j] - ugh.phase[j]) > tol) {
            throw ConstructionError("representation: U(gh) != U(g)U(h) at (" +
                                    std::to_string(g) + ", " + std::to_string(h) + ")");
          }
        }
      }
    }
  } else {
    const Operator id = Operator::Identity(d, d);
    if (max_abs(rep.dense_[e] - id) > tol) {
      throw ConstructionError("representation: U(e) is not the identity");
    }
    for (int g = 0; g < group.order(); ++g) {
      if (!is_unitary(rep.dense_[g], tol)) {
        throw ConstructionError("representation: U(" + std::to_string(g) + ") is not unitary");
      }
    }
    for (int g = 0; g < group.order(); ++g) {
      for (int h = 0; h < group.order(); ++h) {
        if (max_abs(rep.dense_[g] * rep.dense_[h] - rep.dense_[group.mul(g, h)]) > tol) {
          throw ConstructionError("representation: U(gh) != U(g)U(h) at (" + std::to_string(g) +
                                  ", " + std::to_string(h) + ")");
        }
      }
    }
  }
  return rep;
}

void UnitaryRep::check_element(int g) const {
  if (!group_.contains(g)) {
    throw ArgumentError("representation: group element " + std::to_string(g) + " out of range");
  }
}

Operator UnitaryRep::matrix(int g) const {
  check_element(g);
  if (!is_monomial()) return dense_[g];
  Operator u = Operator::Zero(dim_, dim_);
  const auto& m = monomial_[g];
  for (int j = 0; j < dim_; ++j) u(m.row[j], j) = m.phase[j];
  return u;
}

Operator UnitaryRep::act_op(int g, const Operator& a) const {
  check_element(g);
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw ArgumentError("g.A: operator dimension " + std::to_string(a.rows()) +
                        " does not match representation dimension " + std::to_string(dim_));
  }
  if (!is_monomial()) return dense_[g] * a * dense_[g].adjoint();
  const auto& m = monomial_[g];
  Operator out(dim_, dim_);
  for (int k = 0; k < dim_; ++k) {
    const Complex ck = std::conj(m.phase[k]);
    for (int j = 0; j < dim_; ++j) out(m.row[j], m.row[k]) = m.phase[j] * a(j, k) * ck;
  }
  return out;
}

Operator UnitaryRep::act_state(int g, const Operator& rho) const {
  check_element(g);
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw ArgumentError("g.rho: operator dimension " + std::to_string(rho.rows()) +
                        " does not match representation dimension " + std::to_string(dim_));
  }
  if (!is_monomial()) return dense_[g].adjoint() * rho * dense_[g];
  const auto& m = monomial_[g];
  Operator out(dim_, dim_);
  for (int k = 0; k < dim_; ++k) {
    for (int j = 0; j < dim_; ++j) {
      out(j, k) = std::conj(m.phase[j]) * rho(m.row[j], m.row[k]) * m.phase[k];
    }
  }
  return out;
}

Vector UnitaryRep::apply(int g, const Vector& v) const {
  check_element(g);
  if (v.size() != dim_) throw ArgumentError("U(g)v: vector dimension mismatch");
  if (!is_monomial()) return dense_[g] * v;
  const auto& m = monomial_[g];
  Vector out = Vector::Zero(dim_);
  for (int j = 0; j < dim_; ++j) out(m.row[j]) = m.phase[j] * v(j);
  return out;
}

UnitaryRep tensor(const UnitaryRep& a, const UnitaryRep& b) {
  if (!(a.group() == b.group())) throw ArgumentError("tensor: representations of different groups");
  const FiniteGroup& group = a.group();
  UnitaryRep rep;
  rep.group_ = group;
  rep.dim_ = a.dim_ * b.dim_;
  rep.kind_ = RepKind::Custom;
  if (a.is_monomial() && b.is_monomial()) {
    rep.monomial_.reserve(group.order());
    for (int g = 0; g < group.order(); ++g) {
      const auto& ma = a.monomial_[g];
      const auto& mb = b.monomial_[g];
      UnitaryRep::Monomial m;
      m.row.resize(rep.dim_);
      m.phase.resize(rep.dim_);
      for (int i = 0; i < a.dim_; ++i) {
        for (int j = 0; j < b.dim_; ++j) {
          m.row[i * b.dim_ + j] = ma.row[i] * b.dim_ + mb.row[j];
          m.phase[i * b.dim_ + j] = ma.phase[i] * mb.phase[j];
        }
      }
      rep.monomial_.push_back(std::move(m));
    }
    return rep;
  }
  rep.dense_.reserve(group.order());
  for (int g = 0; g < group.order(); ++g) rep.dense_.push_back(kron(a.matrix(g), b.matrix(g)));
  return rep;
}

UnitaryRep tensor_all(const std::vector<UnitaryRep>& reps) {
  if (reps.empty()) throw ArgumentError("tensor_all: empty list");
  UnitaryRep out = reps.front();
  for (size_t i = 1; i < reps.size(); ++i) out = tensor(out, reps[i]);
  return out;
}

UnitaryRep left_regular_rep(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<Operator> mats;
  for (int g = 0; g < n; ++g) {
    Operator u = Operator::Zero(n, n);
    for (int h = 0; h < n; ++h) u(group.mul(g, h), h) = 1.0;
    mats.push_back(std::move(u));
  }
  return UnitaryRep::from_matrices(group, std::move(mats), RepKind::LeftRegular);
}

UnitaryRep left_right_rep(const FiniteGroup& group) {
  const int n = group.order();
  std::vector<Operator> mats;
  for (int g = 0; g < n; ++g) {
    Operator u = Operator::Zero(n, n);
    for (int h = 0; h < n; ++h) u(group.mul(h, group.inverse(g)), h) = 1.0;
    mats.push_back(std::move(u));
  }
  return UnitaryRep::from_matrices(group, std::move(mats), RepKind::LeftRight);
}

UnitaryRep coset_permutation_rep(const CosetSpace& space) {
  const int n = space.size();
  std::vector<Operator> mats;
  for (int g = 0; g < space.group().order(); ++g) {
    Operator u = Operator::Zero(n, n);
    for (int c = 0; c < n; ++c) u(space.act(g, c), c) = 1.0;
    mats.push_back(std::move(u));
  }
  return UnitaryRep::from_matrices(space.group(), std::move(mats), RepKind::CosetPermutation);
}

UnitaryRep trivial_rep(const FiniteGroup& group, int dim) {
  std::vector<Operator> mats(group.order(), Operator::Identity(dim, dim));
  return UnitaryRep::from_matrices(group, std::move(mats));
}

UnitaryRep direct_sum(const UnitaryRep& a, const UnitaryRep& b) {
  if (!(a.group() == b.group())) {
    throw ArgumentError("direct_sum: representations of different groups");
  }
  const int d = a.dim() + b.dim();
  std::vector<Operator> mats;
  for (int g = 0; g < a.group().order(); ++g) {
    Operator u = Operator::Zero(d, d);
    u.topLeftCorner(a.dim(), a.dim()) = a.matrix(g);
    u.bottomRightCorner(b.dim(), b.dim()) = b.matrix(g);
    mats.push_back(std::move(u));
  }
  return UnitaryRep::from_matrices(a.group(), std::move(mats));
}

UnitaryRep conjugated(const UnitaryRep& rep, const Operator& v) {
  if (v.rows() != rep.dim() || !is_unitary(v)) {
    throw ArgumentError("conjugated: V must be a unitary of the representation's dimension");
  }
  std::vector<Operator> mats;
  for (int g = 0; g < rep.group().order(); ++g) mats.push_back(v * rep.matrix(g) * v.adjoint());
  return UnitaryRep::from_matrices(rep.group(), std::move(mats));
}

const FiniteGroup& SampleSpace::group() const {
  if (is_principal()) return std::get<FiniteGroup>(space_);
  return std::get<CosetSpace>(space_).group();
}

int SampleSpace::size() const {
  if (is_principal()) return std::get<FiniteGroup>(space_).order();
  return std::get<CosetSpace>(space_).size();
}

int SampleSpace::act(int g, int x) const {
  if (is_principal()) return std::get<FiniteGroup>(space_).mul(g, x);
  return std::get<CosetSpace>(space_).act(g, x);
}

POVM::POVM(SampleSpace space, std::vector<Operator> effects, double tol)
    : space_(std::move(space)), effects_(std::move(effects)) {
  if (static_cast<int>(effects_.size()) != space_.size()) {
    throw ConstructionError("POVM needs one effect per sample point (" +
                            std::to_string(space_.size()) + "), got " +
                            std::to_string(effects_.size()));
  }
  const auto d = effects_.front().rows();
  Operator sum = Operator::Zero(d, d);
  for (size_t x = 0; x < effects_.size(); ++x) {
    if (effects_[x].rows() != d || effects_[x].cols() != d) {
      throw ConstructionError("POVM effect " + std::to_string(x) + " has inconsistent dimension");
    }
    if (!is_effect(effects_[x], tol)) {
      throw ConstructionError("POVM element " + std::to_string(x) + " is not an effect");
    }
    sum += effects_[x];
  }
  const double dev = max_abs(sum - Operator::Identity(d, d));
  if (dev > tol) {
    throw ConstructionError("POVM effects do not sum to the identity (deviation " +
                            format_number(dev) + ")");
  }
}

Operator POVM::effect_of(const std::vector<int>& points) const {
  Operator out = Operator::Zero(dim(), dim());
  for (int x : points) out += effect(x);
  return out;
}

POVM canonical_pvm(const UnitaryRep& rep) {
  const FiniteGroup& group = rep.group();
  const int n = group.order();
  if (rep.kind() != RepKind::LeftRegular && rep.kind() != RepKind::LeftRight) {
    throw ArgumentError("canonical_pvm: only the left-regular and left-right representations "
                        "have a built-in canonical PVM");
  }
  std::vector<Operator> effects;
  for (int h = 0; h < n; ++h) {
    const int basis = rep.kind() == RepKind::LeftRegular ? h : group.inverse(h);
    Operator p = Operator::Zero(n, n);
    p(basis, basis) = 1.0;
    effects.push_back(std::move(p));
  }
  return POVM(SampleSpace(group), std::move(effects));
}

POVM coset_pvm(const CosetSpace& space) {
  std::vector<Operator> effects;
  for (int c = 0; c < space.size(); ++c) {
    Operator p = Operator::Zero(space.size(), space.size());
    p(c, c) = 1.0;
    effects.push_back(std::move(p));
  }
  return POVM(SampleSpace(space), std::move(effects));
}

POVM coherent_state_povm(const UnitaryRep& rep, const Vector& seed, double tol) {
  if (seed.size() != rep.dim()) throw ArgumentError("coherent_state_povm: seed dimension mismatch");
  const int d = rep.dim();
  std::vector<Operator> projectors;
  Operator frame_op = Operator::Zero(d, d);
  for (int g = 0; g < rep.group().order(); ++g) {
    const Vector phi = rep.apply(g, seed);
    projectors.push_back(phi * phi.adjoint());
    frame_op += projectors.back();
  }
  const double lambda = frame_op.trace().real() / d;
  const double deviation = op_norm(frame_op - lambda * Operator::Identity(d, d));
  if (deviation > tol || lambda <= 0.0) {
    throw ResolutionOfIdentityError(
        "coherent_state_povm: resolution-of-identity failure, ||S - (trS/dim) I|| = " +
            format_number(deviation),
        deviation);
  }
  for (auto& p : projectors) p /= lambda;
  return POVM(SampleSpace(rep.group()), std::move(projectors), tol);
}

double covariance_deviation(const POVM& povm, const UnitaryRep& rep) {
  if (povm.dim() != rep.dim()) throw ArgumentError("covariance: POVM and rep dimensions differ");
  if (!(povm.space().group() == rep.group())) {
    throw ArgumentError("covariance: POVM sample space and rep use different groups");
  }
  double worst = 0.0;
  for (int g = 0; g < rep.group().order(); ++g) {
    for (int x = 0; x < povm.size(); ++x) {
      const double dev = max_abs(povm.effect(povm.space().act(g, x)) - rep.act_op(g, povm.effect(x)));
      worst = std::max(worst, dev);
    }
  }
  return worst;
}

bool is_covariant(const POVM& povm, const UnitaryRep& rep, double tol) {
  return covariance_deviation(povm, rep) <= tol;
}

Frame classify_frame(const UnitaryRep& rep, const POVM& povm, double tol) {
  const double dev = covariance_deviation(povm, rep);
  if (dev > tol) {
    throw ConstructionError("classify_frame: POVM is not covariant (deviation " +
                            format_number(dev) + ")");
  }
  FrameFlags flags;
  flags.principal = povm.space().is_principal();
  flags.sharp = true;
  flags.localizable = true;
  for (const auto& e : povm.effects()) {
    if (max_abs(e * e - e) > tol) flags.sharp = false;
    const double norm = op_norm(e);
    if (norm > tol && std::abs(norm - 1.0) > tol) flags.localizable = false;
  }
  flags.ideal = flags.principal && flags.sharp;

  const FiniteGroup& group = rep.group();
  std::vector<int> isotropy;
  for (int h = 0; h < group.order(); ++h) {
    bool fixes = true;
    for (int x = 0; x < povm.size() && fixes; ++x) {
      fixes = max_abs(rep.act_op(h, povm.effect(x)) - povm.effect(x)) <= tol;
    }
    if (fixes) isotropy.push_back(h);
  }
  Subgroup iso(group, std::move(isotropy));
  flags.complete = iso.is_trivial();
  return Frame(rep, povm, flags, std::move(iso));
}

Frame ideal_frame(const UnitaryRep& rep) { return classify_frame(rep, canonical_pvm(rep)); }

Vector localizing_vector(const Frame& frame, int x) {
  if (!frame.flags().localizable) {
    throw UnsupportedFrameError("localizing_state: frame is not localizable");
  }
  const Operator& e = frame.effect(x);
  Eigen::SelfAdjointEigenSolver<Operator> solver(hermitian_part(e));
  const int top = static_cast<int>(solver.eigenvalues().size()) - 1;
  if (solver.eigenvalues()(top) < 0.5) {
    throw UnsupportedFrameError("localizing_state: effect at sample point " + std::to_string(x) +
                                " is zero");
  }
  return solver.eigenvectors().col(top);
}

Operator localizing_state(const Frame& frame, int x) {
  const Vector v = localizing_vector(frame, x);
  return v * v.adjoint();
}

RealVector born(const POVM& povm, const Operator& rho) {
  if (rho.rows() != povm.dim() || rho.cols() != povm.dim()) {
    throw ArgumentError("born: state dimension " + std::to_string(rho.rows()) +
                        " does not match POVM dimension " + std::to_string(povm.dim()));
  }
  RealVector mu(povm.size());
  for (int x = 0; x < povm.size(); ++x) mu(x) = trace_product(rho, povm.effect(x)).real();
  return mu;
}

}  // namespace qrf
