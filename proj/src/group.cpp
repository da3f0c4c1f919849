#include "qrf/group.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qrf/error.hpp"

namespace qrf {

namespace {

std::string triple(int g, int h, int k) {
  std::ostringstream os;
  os << "(" << g << ", " << h << ", " << k << ")";
  return os.str();
}

bool is_permutation_of_range(const std::vector<int>& v, int n) {
  std::vector<char> seen(n, 0);
  for (int x : v) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

FiniteGroup FiniteGroup::from_cayley_table(std::vector<std::vector<int>> table,
                                           std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw ConstructionError("cayley table is empty");
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(table[r].size()) != n) {
      throw ConstructionError("cayley table is not square (row " + std::to_string(r) + ")");
    }
  }
  for (int r = 0; r < n; ++r) {
    if (!is_permutation_of_range(table[r], n)) {
      throw ConstructionError("cayley row " + std::to_string(r) + " not a permutation");
    }
  }
  for (int c = 0; c < n; ++c) {
    std::vector<int> column(n);
    for (int r = 0; r < n; ++r) column[r] = table[r][c];
    if (!is_permutation_of_range(column, n)) {
      throw ConstructionError("cayley column " + std::to_string(c) + " not a permutation");
    }
  }

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
    if (ok) identity = e;
  }
  if (identity < 0) throw ConstructionError("cayley table has no two-sided identity");

  std::vector<int> inverse(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (table[g][h] == identity) {
        if (table[h][g] != identity) {
          throw ConstructionError("element " + std::to_string(g) + " has no two-sided inverse");
        }
        inverse[g] = h;
      }
    }
  }

  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      const int gh = table[g][h];
      for (int k = 0; k < n; ++k) {
        if (table[gh][k] != table[g][table[h][k]]) {
          throw ConstructionError("cayley table not associative at triple " + triple(g, h, k));
        }
      }
    }
  }

  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    throw ConstructionError("label count " + std::to_string(labels.size()) +
                            " does not match group order " + std::to_string(n));
  }

  FiniteGroup group;
  group.cayley_ = std::move(table);
  group.inverse_ = std::move(inverse);
  group.labels_ = std::move(labels);
  group.identity_ = identity;
  return group;
}

int FiniteGroup::mul(int g, int h) const {
  if (!contains(g) || !contains(h)) {
    throw ArgumentError("group element index out of range: mul(" + std::to_string(g) + ", " +
                        std::to_string(h) + ") in group of order " + std::to_string(order()));
  }
  return cayley_[g][h];
}

int FiniteGroup::inverse(int g) const {
  if (!contains(g)) {
    throw ArgumentError("group element index out of range: " + std::to_string(g));
  }
  return inverse_[g];
}

std::string FiniteGroup::label(int g) const {
  if (!contains(g)) throw ArgumentError("group element index out of range: " + std::to_string(g));
  if (labels_.empty()) return std::to_string(g);
  return labels_[g];
}

int FiniteGroup::find(std::string_view label) const {
  for (int g = 0; g < order(); ++g) {
    if (this->label(g) == label) return g;
  }
  return -1;
}

bool FiniteGroup::is_abelian() const {
  for (int g = 0; g < order(); ++g) {
    for (int h = g + 1; h < order(); ++h) {
      if (cayley_[g][h] != cayley_[h][g]) return false;
    }
  }
  return true;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw ArgumentError("cyclic_group: n must be >= 1");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

FiniteGroup dihedral_group(int n) {
  if (n < 1) throw ArgumentError("dihedral_group: n must be >= 1");
  const int order = 2 * n;
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b + d)
  for (int x = 0; x < order; ++x) {
    const int a = x % n, b = x / n;
    labels[x] = (a == 0 && b == 0) ? "e"
                : (b == 0)         ? "r" + std::to_string(a)
                                   : (a == 0 ? std::string("s") : "r" + std::to_string(a) + "s");
    for (int y = 0; y < order; ++y) {
      const int c = y % n, d = y / n;
      const int rot = ((a + (b == 0 ? c : -c)) % n + n) % n;
      table[x][y] = rot + n * ((b + d) % 2);
    }
  }
  return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

namespace {

std::string cycle_label(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  std::string out;
  for (int start = 0; start < n; ++start) {
    if (seen[start] || perm[start] == start) continue;
    out += "(";
    for (int i = start; !seen[i]; i = perm[i]) {
      seen[i] = 1;
      out += std::to_string(i + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace

FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 5) throw ArgumentError("symmetric_group: n must be in [1, 5]");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;

  const int order = static_cast<int>(perms.size());
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  for (int s = 0; s < order; ++s) {
    labels[s] = cycle_label(perms[s]);
    for (int t = 0; t < order; ++t) {
      std::vector<int> composed(n);
      for (int i = 0; i < n; ++i) composed[i] = perms[s][perms[t][i]];
      table[s][t] = index.at(composed);
    }
  }
  return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

FiniteGroup quaternion_group() {
  // Element 2*u + s is (-1)^s * unit[u], unit = 1, i, j, k.
  constexpr std::array<std::array<int, 4>, 4> unit_product = {{
      {0, 1, 2, 3},
      {1, 0, 3, 2},
      {2, 3, 0, 1},
      {3, 2, 1, 0},
  }};
  constexpr std::array<std::array<int, 4>, 4> unit_sign = {{
      {0, 0, 0, 0},
      {0, 1, 0, 1},  // i*i = -1, i*j = k, i*k = -j
      {0, 1, 1, 0},  // j*i = -k, j*j = -1, j*k = i
      {0, 0, 1, 1},  // k*i = j, k*j = -i, k*k = -1
  }};
  const std::array<std::string, 4> names = {"1", "i", "j", "k"};
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  std::vector<std::string> labels(8);
  for (int x = 0; x < 8; ++x) {
    const int u = x / 2, s = x % 2;
    labels[x] = (s ? "-" : "") + names[u];
    for (int y = 0; y < 8; ++y) {
      const int v = y / 2, t = y % 2;
      table[x][y] = 2 * unit_product[u][v] + ((s + t + unit_sign[u][v]) % 2);
    }
  }
  return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

FiniteGroup builtin_group(std::string_view name) {
  if (name.starts_with("builtin:")) name.remove_prefix(8);
  if (name.size() >= 2) {
    const char kind = name[0];
    int n = 0;
    try {
      n = std::stoi(std::string(name.substr(1)));
    } catch (const std::exception&) {
      n = 0;
    }
    if (kind == 'z' && n >= 1 && n <= 8) return cyclic_group(n);
    if (kind == 'd' && n >= 3 && n <= 5) return dihedral_group(n);
    if (kind == 's' && (n == 3 || n == 4)) return symmetric_group(n);
    if (kind == 'q' && n == 8) return quaternion_group();
  }
  throw ArgumentError("unknown builtin group '" + std::string(name) + "'");
}

std::vector<std::string> builtin_group_names() {
  return {"z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8", "d3", "d4", "d5", "s3", "s4", "q8"};
}

Subgroup::Subgroup(const FiniteGroup& group, std::vector<int> members) : group_(group) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (int m : members) {
    if (!group.contains(m)) {
      throw ConstructionError("subgroup member " + std::to_string(m) + " is not a group element");
    }
  }
  if (!std::binary_search(members.begin(), members.end(), group.identity())) {
    throw ConstructionError("subgroup does not contain the identity");
  }
  for (int a : members) {
    if (!std::binary_search(members.begin(), members.end(), group.inverse(a))) {
      throw ConstructionError("subgroup not closed under inverse at " + std::to_string(a));
    }
    for (int b : members) {
      if (!std::binary_search(members.begin(), members.end(), group.mul(a, b))) {
        throw ConstructionError("subgroup not closed under multiplication at (" +
                                std::to_string(a) + ", " + std::to_string(b) + ")");
      }
    }
  }
  members_ = std::move(members);
}

Subgroup Subgroup::trivial(const FiniteGroup& group) { return Subgroup(group, {group.identity()}); }

Subgroup Subgroup::whole(const FiniteGroup& group) {
  std::vector<int> all(group.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(group, std::move(all));
}

Subgroup Subgroup::generated_by(const FiniteGroup& group, const std::vector<int>& generators) {
  std::set<int> closure = {group.identity()};
  std::vector<int> frontier = {group.identity()};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier) {
      for (int g : generators) {
        const int y = group.mul(x, g);
        if (closure.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return Subgroup(group, std::vector<int>(closure.begin(), closure.end()));
}

bool Subgroup::contains(int g) const {
  return std::binary_search(members_.begin(), members_.end(), g);
}

std::vector<Subgroup> small_subgroups(const FiniteGroup& group) {
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> out;
  auto add = [&](const Subgroup& h) {
    if (seen.insert(h.members()).second) out.push_back(h);
  };
  add(Subgroup::trivial(group));
  for (int a = 0; a < group.order(); ++a) {
    add(Subgroup::generated_by(group, {a}));
    for (int b = a + 1; b < group.order(); ++b) add(Subgroup::generated_by(group, {a, b}));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Subgroup& x, const Subgroup& y) { return x.order() < y.order(); });
  return out;
}

CosetSpace::CosetSpace(const FiniteGroup& group, const Subgroup& subgroup)
    : group_(group), subgroup_(subgroup), coset_of_(group.order(), -1) {
  if (!(subgroup.group() == group)) {
    throw ArgumentError("coset_space: subgroup belongs to a different group");
  }
  for (int g = 0; g < group.order(); ++g) {
    if (coset_of_[g] >= 0) continue;
    const int c = static_cast<int>(reps_.size());
    reps_.push_back(g);
    for (int h : subgroup.members()) coset_of_[group.mul(g, h)] = c;
  }
  action_.assign(group.order(), std::vector<int>(reps_.size()));
  for (int g = 0; g < group.order(); ++g) {
    for (int c = 0; c < size(); ++c) action_[g][c] = coset_of_[group.mul(g, reps_[c])];
  }
}

int CosetSpace::act(int g, int c) const {
  if (!group_.contains(g) || c < 0 || c >= size()) {
    throw ArgumentError("coset action index out of range");
  }
  return action_[g][c];
}

std::vector<int> CosetSpace::members(int c) const {
  std::vector<int> out;
  for (int g = 0; g < group_.order(); ++g) {
    if (coset_of_[g] == c) out.push_back(g);
  }
  return out;
}

}  // namespace qrf
