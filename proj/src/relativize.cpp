#include "qrf/relativize.hpp"

#include <algorithm>

#include "qrf/error.hpp"

namespace qrf {

namespace {

void check_square(const Operator& a, int dim, const char* op) {
  if (a.rows() != dim || a.cols() != dim) {
    throw ArgumentError(std::string(op) + ": expected a " + std::to_string(dim) + "x" +
                        std::to_string(dim) + " operator, got " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()));
  }
}

void check_same_group(const Frame& frame, const UnitaryRep& rep, const char* op) {
  if (!(frame.group() == rep.group())) {
    throw ArgumentError(std::string(op) + ": frame and system representation use different groups");
  }
}

// tr_R[(F ⊗ I) Ω] with R the first factor of dimension F.rows().
Operator weighted_partial_trace(const Operator& f, const Operator& omega, int ds) {
  const Eigen::Index dr = f.rows();
  Operator out = Operator::Zero(ds, ds);
  for (Eigen::Index a = 0; a < dr; ++a) {
    for (Eigen::Index b = 0; b < dr; ++b) {
      const Complex w = f(b, a);
      if (w == Complex(0.0)) continue;
      out += w * omega.block(a * ds, b * ds, ds, ds);
    }
  }
  return out;
}

}  // namespace

YenMap::YenMap(Frame frame, UnitaryRep system_rep)
    : frame_(std::move(frame)), system_(std::move(system_rep)) {
  if (!frame_.flags().principal) {
    throw UnsupportedFrameError(
        "yen: frame is not principal; use yen_homogeneous for coset-space frames");
  }
  check_same_group(frame_, system_, "yen");
}

Operator YenMap::apply(const Operator& a) const {
  check_square(a, system_dim(), "yen");
  const int n = frame_dim() * system_dim();
  Operator out = Operator::Zero(n, n);
  const int ds = system_dim();
  for (int g = 0; g < frame_.group().order(); ++g) {
    const Operator& e = frame_.effect(g);
    const Operator moved = system_.act_op(g, a);
    for (int j = 0; j < e.cols(); ++j) {
      for (int i = 0; i < e.rows(); ++i) {
        if (e(i, j) != 0.0) out.block(i * ds, j * ds, ds, ds) += e(i, j) * moved;
      }
    }
  }
  return out;
}

Operator YenMap::predual(const Operator& omega) const {
  check_square(omega, frame_dim() * system_dim(), "yen_predual");
  Operator out = Operator::Zero(system_dim(), system_dim());
  for (int g = 0; g < frame_.group().order(); ++g) {
    out += system_.act_state(g, weighted_partial_trace(frame_.effect(g), omega, system_dim()));
  }
  return out;
}

Operator yen(const Frame& frame, const UnitaryRep& system_rep, const Operator& a) {
  return YenMap(frame, system_rep).apply(a);
}

Operator yen_predual(const Frame& frame, const UnitaryRep& system_rep, const Operator& omega) {
  return YenMap(frame, system_rep).predual(omega);
}

POVM convolve(const POVM& system_povm, const Frame& frame, const UnitaryRep& system_rep) {
  if (system_povm.dim() != system_rep.dim()) {
    throw ArgumentError("convolve: system POVM dimension does not match the system representation");
  }
  const YenMap map(frame, system_rep);
  std::vector<Operator> effects;
  effects.reserve(system_povm.size());
  for (const auto& e : system_povm.effects()) effects.push_back(map.apply(e));
  return POVM(system_povm.space(), std::move(effects));
}

POVM relative_orientation(const Frame& frame1, const Frame& frame2) {
  if (!(frame1.group() == frame2.group())) {
    throw ArgumentError("relative_orientation: frames are on different groups");
  }
  if (!frame2.flags().principal) {
    throw UnsupportedFrameError("relative_orientation: second frame is not principal");
  }
  return convolve(frame2.povm(), frame1, frame2.rep());
}

Operator restrict(const Operator& omega, const Operator& a) {
  const Eigen::Index dr = omega.rows();
  if (omega.cols() != dr || dr == 0) throw ArgumentError("restrict: state is not square");
  if (a.rows() != a.cols() || a.rows() % dr != 0) {
    throw ArgumentError("restrict: operator dimension is not a multiple of the state dimension");
  }
  return weighted_partial_trace(omega, a, static_cast<int>(a.rows() / dr));
}

Operator conditioned_yen(const Frame& frame, const UnitaryRep& system_rep, const Operator& omega,
                         const Operator& a) {
  if (!frame.flags().principal) throw UnsupportedFrameError("conditioned_yen: frame is not principal");
  check_same_group(frame, system_rep, "conditioned_yen");
  check_square(a, system_rep.dim(), "conditioned_yen");
  const RealVector mu = born(frame.povm(), omega);
  Operator out = Operator::Zero(a.rows(), a.cols());
  for (int g = 0; g < frame.group().order(); ++g) {
    if (mu(g) != 0.0) out += mu(g) * system_rep.act_op(g, a);
  }
  return out;
}

Operator product_relative_state(const Frame& frame, const UnitaryRep& system_rep,
                                const Operator& omega, const Operator& rho) {
  if (!frame.flags().principal) {
    throw UnsupportedFrameError("product_relative_state: frame is not principal");
  }
  check_same_group(frame, system_rep, "product_relative_state");
  check_square(rho, system_rep.dim(), "product_relative_state");
  const RealVector mu = born(frame.povm(), omega);
  Operator out = Operator::Zero(rho.rows(), rho.cols());
  for (int g = 0; g < frame.group().order(); ++g) {
    if (mu(g) != 0.0) out += mu(g) * system_rep.act_state(g, rho);
  }
  return out;
}

double isotropy_variance(const Frame& frame, const UnitaryRep& system_rep, const Operator& a) {
  check_square(a, system_rep.dim(), "yen_homogeneous");
  const auto& space = frame.povm().space();
  const std::vector<int> members =
      space.is_principal() ? std::vector<int>{frame.group().identity()}
                           : space.cosets().subgroup().members();
  double worst = 0.0;
  for (int h : members) worst = std::max(worst, max_abs(system_rep.act_op(h, a) - a));
  return worst;
}

Operator yen_homogeneous(const Frame& frame, const UnitaryRep& system_rep, const Operator& a,
                         double tol) {
  const auto& space = frame.povm().space();
  std::vector<int> reps(space.size());
  for (int c = 0; c < space.size(); ++c) {
    reps[c] = space.is_principal() ? c : space.cosets().representative(c);
  }
  return yen_homogeneous(frame, system_rep, a, reps, tol);
}

Operator yen_homogeneous(const Frame& frame, const UnitaryRep& system_rep, const Operator& a,
                         const std::vector<int>& representatives, double tol) {
  check_same_group(frame, system_rep, "yen_homogeneous");
  const auto& space = frame.povm().space();
  if (static_cast<int>(representatives.size()) != space.size()) {
    throw ArgumentError("yen_homogeneous: need one representative per coset");
  }
  for (int c = 0; c < space.size(); ++c) {
    const int g = representatives[c];
    const bool in_coset = space.is_principal() ? g == c
                                               : frame.group().contains(g) &&
                                                     space.cosets().coset_of(g) == c;
    if (!in_coset) {
      throw ArgumentError("yen_homogeneous: element " + std::to_string(g) +
                          " does not represent coset " + std::to_string(c));
    }
  }
  const double variance = isotropy_variance(frame, system_rep, a);
  if (variance > tol) {
    throw PreconditionError("yen_homogeneous: operator is not invariant under the isotropy "
                            "subgroup, max_h |h.A - A| = " + format_number(variance));
  }
  const int n = frame.dim() * system_rep.dim();
  Operator out = Operator::Zero(n, n);
  for (int c = 0; c < space.size(); ++c) {
    out += kron(frame.effect(c), system_rep.act_op(representatives[c], a));
  }
  return out;
}

}  // namespace qrf
