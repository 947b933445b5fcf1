#include "hkt/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "hkt/error.hpp"

namespace hkt {

char to_char(Family family) {
  switch (family) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

Family family_from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
    default: break;
  }
  throw UnsupportedFamilyRank(std::string("unsupported family '") + c + "' (expected A, B, C or D)");
}

int dot(const Coords& a, const Coords& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0);
}

Coords operator+(const Coords& a, const Coords& b) {
  Coords out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Coords operator-(const Coords& a, const Coords& b) {
  Coords out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Coords operator-(const Coords& a) {
  Coords out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

Coords operator*(int k, const Coords& a) {
  Coords out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = k * a[i];
  return out;
}

int Root::height() const { return std::accumulate(simple_coeffs.begin(), simple_coeffs.end(), 0); }

Root Root::operator-() const {
  Root r = *this;
  r.coords = -coords;
  for (auto& c : r.simple_coeffs) c = -c;
  r.sign = sign == Sign::Positive ? Sign::Negative : Sign::Positive;
  return r;
}

Coords coroot(const Coords& r) {
  const int norm = dot(r, r);
  Coords out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    // (r, r) is 1, 2 or 4 for classical roots in the orthogonal basis.
    out[i] = 2 * r[i] / norm;
  }
  return out;
}

Coords coroot(const Root& r) { return coroot(r.coords); }

std::string CartanType::name() const { return std::string(1, to_char(family)) + std::to_string(rank); }

int CartanType::positive_root_count() const {
  switch (family) {
    case Family::A: return rank * (rank + 1) / 2;
    case Family::B:
    case Family::C: return rank * rank;
    case Family::D: return rank * (rank - 1);
  }
  return 0;
}

int CartanType::dimension() const { return rank + 2 * positive_root_count(); }

void check_family_rank(Family family, int rank) {
  const int min_rank = family == Family::B ? 2 : family == Family::D ? 3 : 1;
  if (rank < min_rank) {
    throw UnsupportedFamilyRank("unsupported family/rank " + std::string(1, to_char(family)) +
                                std::to_string(rank) + ": minimal rank for " + to_char(family) +
                                " is " + std::to_string(min_rank));
  }
}

std::string simple_root_name(int index, int rank) {
  static const char* greek[] = {"alpha", "beta", "gamma", "delta"};
  if (rank <= 4 && index >= 0 && index < 4) return greek[index];
  return "a" + std::to_string(index + 1);
}

namespace {

std::vector<Coords> standard_simple_roots(Family family, int rank) {
  std::vector<Coords> simple;
  const int m = family == Family::A ? rank + 1 : rank;
  auto unit = [m](int i) {
    Coords c(static_cast<std::size_t>(m), 0);
    c[static_cast<std::size_t>(i)] = 1;
    return c;
  };
  for (int i = 0; i + 1 < rank; ++i) simple.push_back(unit(i) - unit(i + 1));
  switch (family) {
    case Family::A: simple.push_back(unit(rank - 1) - unit(rank)); break;
    case Family::B: simple.push_back(unit(rank - 1)); break;
    case Family::C: simple.push_back(2 * unit(rank - 1)); break;
    case Family::D: simple.push_back(unit(rank - 2) + unit(rank - 1)); break;
  }
  return simple;
}

int pairing(const Coords& beta, const Coords& alpha) {
  // <beta, alpha^vee>
  return 2 * dot(beta, alpha) / dot(alpha, alpha);
}

struct Recognized {
  CartanType type;
  std::vector<std::size_t> order;  // Bourbaki order as indices into the input
};

std::vector<std::size_t> walk_path(const std::vector<std::vector<int>>& bonds, std::size_t start,
                                   std::size_t n) {
  std::vector<std::size_t> path{start};
  std::vector<bool> seen(n, false);
  seen[start] = true;
  while (path.size() < n) {
    const std::size_t cur = path.back();
    bool advanced = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && bonds[cur][j] > 0) {
        path.push_back(j);
        seen[j] = true;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return path;
}

Recognized recognize(const std::vector<Coords>& simple) {
  const std::size_t n = simple.size();
  std::vector<std::vector<int>> bonds(n, std::vector<int>(n, 0));
  std::vector<int> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        bonds[i][j] = pairing(simple[i], simple[j]) * pairing(simple[j], simple[i]);
        if (bonds[i][j] > 0) ++degree[i];
      }
  // connectivity
  {
    std::vector<std::size_t> reach = {0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    for (std::size_t k = 0; k < reach.size(); ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (!seen[j] && bonds[reach[k]][j] > 0) {
          seen[j] = true;
          reach.push_back(j);
        }
    if (reach.size() != n) throw PreconditionError("simple roots do not form a connected Dynkin diagram");
  }
  const int rank = static_cast<int>(n);
  if (n == 1) return {{Family::A, 1}, {0}};

  const auto branch = std::find(degree.begin(), degree.end(), 3);
  if (branch != degree.end()) {
    const auto b = static_cast<std::size_t>(branch - degree.begin());
    // Arms hanging off the branch node; the longest one (lowest input index on
    // ties) carries alpha_1.
    std::vector<std::vector<std::size_t>> arms;
    for (std::size_t j = 0; j < n; ++j) {
      if (bonds[b][j] == 0) continue;
      std::vector<std::size_t> arm{j};
      std::size_t prev = b, cur = j;
      for (;;) {
        std::size_t next = n;
        for (std::size_t k = 0; k < n; ++k)
          if (k != prev && bonds[cur][k] > 0) next = k;
        if (next == n) break;
        arm.push_back(next);
        prev = cur;
        cur = next;
      }
      arms.push_back(arm);
    }
    std::stable_sort(arms.begin(), arms.end(), [](const auto& x, const auto& y) {
      if (x.size() != y.size()) return x.size() > y.size();
      return x.back() < y.back();
    });
    std::vector<std::size_t> order(arms[0].rbegin(), arms[0].rend());
    order.push_back(b);
    std::vector<std::size_t> leaves = {arms[1][0], arms[2][0]};
    std::sort(leaves.begin(), leaves.end());
    order.insert(order.end(), leaves.begin(), leaves.end());
    return {{Family::D, rank}, order};
  }

  std::vector<std::size_t> ends;
  for (std::size_t i = 0; i < n; ++i)
    if (degree[i] == 1) ends.push_back(i);
  bool double_bond = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (bonds[i][j] == 2) double_bond = true;
      else if (bonds[i][j] > 2) throw PreconditionError("exceptional (G2) bond in simple roots");

  if (!double_bond) return {{Family::A, rank}, walk_path(bonds, std::min(ends[0], ends[1]), n)};

  int min_norm = dot(simple[0], simple[0]);
  for (const auto& s : simple) min_norm = std::min(min_norm, dot(s, s));
  std::size_t n_short = 0;
  for (const auto& s : simple) n_short += dot(s, s) == min_norm ? 1 : 0;
  Family family;
  if (n == 2) {
    family = min_norm == 1 ? Family::B : Family::C;
  } else {
    family = n_short == 1 ? Family::B : Family::C;
  }
  // B ends on its unique short root, C on its unique long root.
  auto is_special = [&](std::size_t i) {
    const bool is_short = dot(simple[i], simple[i]) == min_norm;
    return family == Family::B ? is_short : !is_short;
  };
  const std::size_t start = is_special(ends[0]) ? ends[1] : ends[0];
  return {{family, rank}, walk_path(bonds, start, n)};
}

}  // namespace

RootSystem RootSystem::build(Family family, int rank) {
  check_family_rank(family, rank);
  const auto simple = standard_simple_roots(family, rank);
  const CartanType seen = recognize(simple).type;
  // C1 = A1 and D3 = A3 are recognized by their isomorphic partner; the
  // standard roots are already in Bourbaki order for the requested type.
  const bool isomorphic = (family == Family::C && rank == 1) || (family == Family::D && rank == 3);
  if (seen.family != family && !isomorphic) {
    throw ConstructionError("internal: standard simple roots recognized as " + seen.name());
  }
  std::vector<std::size_t> order(simple.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  return assemble(simple, {family, rank}, order);
}

RootSystem RootSystem::from_simple_roots(const std::vector<Coords>& simple) {
  if (simple.empty()) throw PreconditionError("empty simple root list");
  const Recognized rec = recognize(simple);
  return assemble(simple, rec.type, rec.order);
}

RootSystem RootSystem::assemble(const std::vector<Coords>& simple, const CartanType& type,
                                const std::vector<std::size_t>& order) {
  RootSystem rs;
  rs.type_ = type;
  rs.ambient_dim_ = simple.front().size();
  const std::size_t n = simple.size();
  int max_norm = 0;
  for (const auto& s : simple) max_norm = std::max(max_norm, dot(s, s));
  for (std::size_t k = 0; k < n; ++k) {
    Root r;
    r.coords = simple[order[k]];
    r.simple_coeffs.assign(n, 0);
    r.simple_coeffs[k] = 1;
    r.length = dot(r.coords, r.coords) == max_norm ? LengthClass::Long : LengthClass::Short;
    rs.simple_.push_back(std::move(r));
  }
  rs.cartan_.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rs.cartan_[i][j] = pairing(rs.simple_[i].coords, rs.simple_[j].coords);
  rs.close_positive_roots();
  return rs;
}

void RootSystem::close_positive_roots() {
  const std::size_t n = simple_.size();
  int max_norm = 0;
  for (const auto& s : simple_) max_norm = std::max(max_norm, dot(s.coords, s.coords));

  std::vector<Root> found = simple_;
  std::set<Coords> known;
  for (const auto& r : found) known.insert(r.coords);
  // Grow by height: beta + alpha_i is a root iff the alpha_i-string through
  // beta extends upward, i.e. q = p - <beta, alpha_i^vee> > 0.
  std::size_t layer_begin = 0;
  while (layer_begin < found.size()) {
    const std::size_t layer_end = found.size();
    for (std::size_t k = layer_begin; k < layer_end; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        const Root beta = found[k];
        const Coords& alpha = simple_[i].coords;
        if (beta.coords == alpha) continue;
        int p = 0;
        while (known.count(beta.coords - (p + 1) * alpha)) ++p;
        const int q = p - pairing(beta.coords, alpha);
        if (q <= 0) continue;
        Root next;
        next.coords = beta.coords + alpha;
        if (known.count(next.coords)) continue;
        next.simple_coeffs = beta.simple_coeffs;
        next.simple_coeffs[i] += 1;
        next.length = dot(next.coords, next.coords) == max_norm ? LengthClass::Long : LengthClass::Short;
        known.insert(next.coords);
        found.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }
  std::stable_sort(found.begin(), found.end(), [](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.simple_coeffs > b.simple_coeffs;
  });
  positive_ = std::move(found);
  index_.clear();
  for (std::size_t k = 0; k < positive_.size(); ++k) index_[positive_[k].coords] = k;
  highest_ = positive_.size() - 1;
  if (static_cast<int>(positive_.size()) != type_.positive_root_count()) {
    throw ConstructionError("root closure for " + name() + " produced " + std::to_string(positive_.size()) +
                            " positive roots, expected " + std::to_string(type_.positive_root_count()));
  }
}

bool RootSystem::is_root(const Coords& c) const { return index_.count(c) || index_.count(-c); }

std::optional<std::size_t> RootSystem::positive_index(const Coords& c) const {
  const auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Root> RootSystem::find(const Coords& c) const {
  if (auto i = positive_index(c)) return positive_[*i];
  if (auto i = positive_index(-c)) return -positive_[*i];
  return std::nullopt;
}

int RootSystem::bourbaki_q(const Coords& alpha, const Coords& beta) const {
  if (!is_root(alpha)) throw PreconditionError("bourbaki_q: alpha is not a root of " + name());
  int q = 0;
  while (is_root(alpha - (q + 1) * beta)) ++q;
  return q;
}

std::string RootSystem::label(const Coords& c) const {
  const auto root = find(c);
  if (!root) throw PreconditionError("label: coordinates are not a root of " + name());
  const bool negative = root->sign == Sign::Negative;
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < root->simple_coeffs.size(); ++i) {
    const int k = negative ? -root->simple_coeffs[i] : root->simple_coeffs[i];
    if (k == 0) continue;
    if (!first) os << '+';
    if (k != 1) os << k;
    os << simple_root_name(static_cast<int>(i), rank());
    first = false;
  }
  return negative ? "-(" + os.str() + ")" : os.str();
}

DynkinDiagram dynkin_diagram(const RootSystem& rs, bool extended) {
  DynkinDiagram d;
  d.extended = extended;
  for (const auto& s : rs.simple_roots()) d.nodes.push_back(s.coords);
  if (extended) d.nodes.push_back(-rs.highest_root().coords);
  const std::size_t n = d.nodes.size();
  d.bonds.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) d.bonds[i][j] = pairing(d.nodes[i], d.nodes[j]) * pairing(d.nodes[j], d.nodes[i]);
  return d;
}

SurgeryResult extended_dynkin_surgery(const RootSystem& rs) {
  const DynkinDiagram d = dynkin_diagram(rs, true);
  const std::size_t r = static_cast<std::size_t>(rs.rank());
  const std::size_t lowest = r;
  std::vector<bool> alive(r, true);
  for (std::size_t i = 0; i < r; ++i)
    if (d.bonds[lowest][i] > 0) alive[i] = false;

  SurgeryResult out;
  std::vector<bool> seen(r, false);
  int used_rank = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (!alive[i] || seen[i]) continue;
    std::vector<std::size_t> comp = {i};
    seen[i] = true;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (std::size_t j = 0; j < r; ++j)
        if (alive[j] && !seen[j] && d.bonds[comp[k]][j] > 0) {
          seen[j] = true;
          comp.push_back(j);
        }
    std::sort(comp.begin(), comp.end());
    std::vector<Coords> simple;
    for (auto j : comp) simple.push_back(d.nodes[j]);
    out.summands.push_back(RootSystem::from_simple_roots(simple));
    used_rank += static_cast<int>(comp.size());
  }
  out.abelian_rank = rs.rank() - 1 - used_rank;
  return out;
}

int ChainNode::basic_root_count() const {
  int n = 1;
  for (const auto& c : children) n += c.basic_root_count();
  return n;
}

namespace {
ChainNode make_node(const RootSystem& rs, int depth) {
  ChainNode node{rs, depth, 0, {}};
  const SurgeryResult s = extended_dynkin_surgery(rs);
  node.abelian_rank = s.abelian_rank;
  for (const auto& sub : s.summands) node.children.push_back(make_node(sub, depth + 1));
  return node;
}
}  // namespace

ChainNode basic_root_tree(const RootSystem& rs) { return make_node(rs, 0); }

}  // namespace hkt
