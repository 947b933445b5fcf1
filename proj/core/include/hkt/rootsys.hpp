#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hkt {

enum class Family { A, B, C, D };

char to_char(Family family);
/// Parses 'A'..'D' (case-insensitive); throws UnsupportedFamilyRank otherwise.
Family family_from_char(char c);

/// Integer coordinates in the orthogonal basis e_1..e_m of the CSA dual.
/// Every root and coroot of a classical algebra is integral in this basis
/// (A_n lives in the zero-sum hyperplane of R^{n+1}).
using Coords = std::vector<int>;

int dot(const Coords& a, const Coords& b);
Coords operator+(const Coords& a, const Coords& b);
Coords operator-(const Coords& a, const Coords& b);
Coords operator-(const Coords& a);
Coords operator*(int k, const Coords& a);

enum class LengthClass { Long, Short };
enum class Sign { Positive, Negative };

struct Root {
  Coords coords;
  /// Expansion in the simple roots of the owning RootSystem.
  std::vector<int> simple_coeffs;
  LengthClass length = LengthClass::Long;
  Sign sign = Sign::Positive;

  int height() const;
  Root operator-() const;
};

/// 2 r / (r, r); integral for every classical root.
Coords coroot(const Root& r);
Coords coroot(const Coords& r);

struct CartanType {
  Family family = Family::A;
  int rank = 1;

  std::string name() const;  ///< e.g. "B3"
  /// Dimension of the compact simple algebra.
  int dimension() const;
  /// Number of positive roots from the closed-form count.
  int positive_root_count() const;

  friend auto operator<=>(const CartanType&, const CartanType&) = default;
};

/// Throws UnsupportedFamilyRank unless the pair names a classical algebra we
/// build: A_n (n>=1), B_n (n>=2), C_n (n>=1, C_1 = A_1 realized in sp(1)),
/// D_n (n>=3).
void check_family_rank(Family family, int rank);

/// Name of the i-th simple root (0-based): alpha, beta, gamma, delta for
/// rank <= 4, a1, a2, ... otherwise.
std::string simple_root_name(int index, int rank);

/// Immutable classical root system. Simple roots follow the Bourbaki
/// ordering; positive roots are listed by height, ties broken by the simple
/// coefficient vector in descending lexicographic order.
class RootSystem {
 public:
  /// Empty placeholder; only build() and from_simple_roots() give valid systems.
  RootSystem() = default;
  static RootSystem build(Family family, int rank);
  /// Builds the irreducible root system generated by the given simple roots
  /// (any order, ambient coordinates). The Cartan type is recognized from
  /// the Dynkin diagram and the simple roots are reordered to Bourbaki order.
  static RootSystem from_simple_roots(const std::vector<Coords>& simple);

  Family family() const { return type_.family; }
  int rank() const { return type_.rank; }
  const CartanType& type() const { return type_; }
  std::string name() const { return type_.name(); }
  std::size_t ambient_dim() const { return ambient_dim_; }

  const std::vector<Root>& simple_roots() const { return simple_; }
  const std::vector<Root>& positive_roots() const { return positive_; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const Root& highest_root() const { return positive_[highest_]; }
  const std::vector<int>& dynkin_labels() const { return positive_[highest_].simple_coeffs; }

  bool is_root(const Coords& c) const;
  std::optional<std::size_t> positive_index(const Coords& c) const;
  /// Root (positive or negative) with the given coordinates.
  std::optional<Root> find(const Coords& c) const;

  /// Greatest q >= 0 such that alpha - q beta is a root (alpha must be a root).
  int bourbaki_q(const Coords& alpha, const Coords& beta) const;

  /// e.g. "alpha+2beta+2gamma", or "-(a2+a3)" for negative roots.
  std::string label(const Coords& c) const;

  int dimension() const { return type_.rank + 2 * static_cast<int>(positive_.size()); }

 private:
  static RootSystem assemble(const std::vector<Coords>& simple, const CartanType& type,
                             const std::vector<std::size_t>& order);
  void close_positive_roots();

  CartanType type_;
  std::size_t ambient_dim_ = 0;
  std::vector<Root> simple_;
  std::vector<Root> positive_;
  std::vector<std::vector<int>> cartan_;
  std::size_t highest_ = 0;
  std::map<Coords, std::size_t> index_;
};

inline const Root& highest_root(const RootSystem& rs) { return rs.highest_root(); }

struct DynkinDiagram {
  /// Simple roots followed, for the extended diagram, by the lowest root -theta.
  std::vector<Coords> nodes;
  bool extended = false;
  /// bonds[i][j] = a_ij a_ji (0 = no edge).
  std::vector<std::vector<int>> bonds;
};

DynkinDiagram dynkin_diagram(const RootSystem& rs, bool extended);

struct SurgeryResult {
  /// Non-Abelian simple summands of the centralizer of E_{+-theta}.
  std::vector<RootSystem> summands;
  /// CSA directions of the centralizer outside the summands.
  int abelian_rank = 0;
};

/// Deletes -theta and its neighbours from the extended Dynkin diagram and
/// returns the connected components left over.
SurgeryResult extended_dynkin_surgery(const RootSystem& rs);

/// One node of the nested-centralizer ("Russian doll") tree: a simple summand,
/// its highest root is a basic root, its children are the summands of the
/// centralizer of that root inside it.
struct ChainNode {
  RootSystem system;
  int depth = 0;
  int abelian_rank = 0;
  std::vector<ChainNode> children;

  const Root& basic_root() const { return system.highest_root(); }
  /// Basic roots in this subtree (including this node).
  int basic_root_count() const;
};

ChainNode basic_root_tree(const RootSystem& rs);

}  // namespace hkt
