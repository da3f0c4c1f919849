#pragma once

#include <vector>

#include "qrf/operator.hpp"
#include "qrf/quantum.hpp"

namespace qrf {

/// Relativization A_S -> Σ_g E_R(g) ⊗ g.A_S with respect to a principal frame.
///
/// The adjoint map (relative states) is predual(); both are linear in their
/// argument and use the frame's effects and the system representation as given.
class YenMap {
 public:
  /// Throws UnsupportedFrameError if the frame's POVM is not on the group.
  YenMap(Frame frame, UnitaryRep system_rep);

  const Frame& frame() const { return frame_; }
  const UnitaryRep& system_rep() const { return system_; }
  int frame_dim() const { return frame_.dim(); }
  int system_dim() const { return system_.dim(); }

  /// Operator on H_R ⊗ H_S.
  Operator apply(const Operator& a) const;
  /// Σ_g U_S(g)* tr_R[(E_R(g) ⊗ I) Ω] U_S(g), the trace-dual of apply.
  Operator predual(const Operator& omega) const;

 private:
  Frame frame_;
  UnitaryRep system_;
};

Operator yen(const Frame& frame, const UnitaryRep& system_rep, const Operator& a);
Operator yen_predual(const Frame& frame, const UnitaryRep& system_rep, const Operator& omega);

/// (E_S * E_R)(x) = yen(E_S(x)): an invariant POVM on E_S's sample space
/// acting on H_R ⊗ H_S.
POVM convolve(const POVM& system_povm, const Frame& frame, const UnitaryRep& system_rep);

/// E_2 * E_1 on H_1 ⊗ H_2. Both frames must be principal on the same group.
POVM relative_orientation(const Frame& frame1, const Frame& frame2);

/// Γ_ω(A) = tr_R[(ω ⊗ I) A] for A on H_R ⊗ H_S with dim H_R = ω.rows().
Operator restrict(const Operator& omega, const Operator& a);

/// Σ_g μ_ω(g) g.A with μ_ω the Born distribution of ω under the frame.
Operator conditioned_yen(const Frame& frame, const UnitaryRep& system_rep, const Operator& omega,
                         const Operator& a);

/// ρ^(ω) = Σ_g μ_ω(g) g.ρ, the relative state of the product ω ⊗ ρ.
Operator product_relative_state(const Frame& frame, const UnitaryRep& system_rep,
                                const Operator& omega, const Operator& rho);

/// max_{h in H} |h.A - A| for the isotropy subgroup H of a coset-space frame.
double isotropy_variance(const Frame& frame, const UnitaryRep& system_rep, const Operator& a);

/// Σ_c E(c) ⊗ g_c.A over the cosets c = g_c H of a frame on G/H, with g_c the
/// smallest element of each coset. Throws PreconditionError when A is not
/// H-invariant within tol.
Operator yen_homogeneous(const Frame& frame, const UnitaryRep& system_rep, const Operator& a,
                         double tol = kDefaultTol);
/// Same with caller-chosen coset representatives (representatives[c] ∈ c).
Operator yen_homogeneous(const Frame& frame, const UnitaryRep& system_rep, const Operator& a,
                         const std::vector<int>& representatives, double tol = kDefaultTol);

}  // namespace qrf
