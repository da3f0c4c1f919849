#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qrf {

/// Finite group stored as a validated Cayley table over dense element indices.
///
/// Elements are the integers 0..order()-1. All derived data (identity,
/// inverses) is precomputed, so every query is a table lookup.
class FiniteGroup {
 public:
  /// Validates the table exhaustively: Latin square, two-sided identity,
  /// inverses, associativity. Throws ConstructionError naming the failure.
  static FiniteGroup from_cayley_table(std::vector<std::vector<int>> table,
                                       std::vector<std::string> labels = {});

  int order() const { return static_cast<int>(cayley_.size()); }
  int identity() const { return identity_; }

  /// cayley[g][h]; throws ArgumentError on out-of-range indices.
  int mul(int g, int h) const;
  int inverse(int g) const;
  bool contains(int g) const { return g >= 0 && g < order(); }

  const std::vector<std::vector<int>>& cayley() const { return cayley_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int g) const;
  /// Element index for a label, or -1.
  int find(std::string_view label) const;

  bool is_abelian() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.cayley_ == b.cayley_;
  }

 private:
  FiniteGroup() = default;

  std::vector<std::vector<int>> cayley_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  int identity_ = 0;
};

FiniteGroup cyclic_group(int n);
/// Symmetry group of the regular n-gon, order 2n. Element a + n*b is r^a s^b.
FiniteGroup dihedral_group(int n);
/// Permutations of n <= 5 points. Products apply the right factor first, so
/// mul(s, t) is the permutation i -> s(t(i)). Labels use 1-based cycle notation.
FiniteGroup symmetric_group(int n);
FiniteGroup quaternion_group();

/// Built-in names: z1..z8, d3..d5, s3, s4, q8 (also accepts an optional
/// "builtin:" prefix). Throws ArgumentError for unknown names.
FiniteGroup builtin_group(std::string_view name);
std::vector<std::string> builtin_group_names();

class Subgroup {
 public:
  /// Throws ConstructionError if members are not closed or miss the identity.
  Subgroup(const FiniteGroup& group, std::vector<int> members);
  static Subgroup trivial(const FiniteGroup& group);
  static Subgroup whole(const FiniteGroup& group);
  /// Smallest subgroup containing the generators.
  static Subgroup generated_by(const FiniteGroup& group, const std::vector<int>& generators);

  const FiniteGroup& group() const { return group_; }
  const std::vector<int>& members() const { return members_; }
  int order() const { return static_cast<int>(members_.size()); }
  bool contains(int g) const;
  bool is_trivial() const { return members_.size() == 1; }

 private:
  FiniteGroup group_;
  std::vector<int> members_;  // sorted
};

/// All subgroups generated by at most two elements, deduplicated and sorted by
/// order. For the groups used here (order <= 24) this is every subgroup.
std::vector<Subgroup> small_subgroups(const FiniteGroup& group);

/// Left cosets gH with the transitive left action g.(kH) = (gk)H.
class CosetSpace {
 public:
  CosetSpace(const FiniteGroup& group, const Subgroup& subgroup);

  const FiniteGroup& group() const { return group_; }
  const Subgroup& subgroup() const { return subgroup_; }
  int size() const { return static_cast<int>(reps_.size()); }
  /// Representative of coset c: the smallest element index in it.
  int representative(int c) const { return reps_.at(c); }
  int coset_of(int g) const { return coset_of_.at(g); }
  int act(int g, int c) const;
  std::vector<int> members(int c) const;

 private:
  FiniteGroup group_;
  Subgroup subgroup_;
  std::vector<int> reps_;
  std::vector<int> coset_of_;
  std::vector<std::vector<int>> action_;
};

}  // namespace qrf
