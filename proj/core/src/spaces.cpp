#include "hkt/spaces.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "hkt/error.hpp"

namespace hkt {

std::string group_name(const CartanType& t) {
  switch (t.family) {
    case Family::A: return "SU(" + std::to_string(t.rank + 1) + ")";
    case Family::B: return "Spin(" + std::to_string(2 * t.rank + 1) + ")";
    case Family::C: return "Sp(" + std::to_string(t.rank) + ")";
    case Family::D: return "Spin(" + std::to_string(2 * t.rank) + ")";
  }
  return "?";
}

std::string classical_name(const CartanType& t) {
  switch (t.family) {
    case Family::A: return "SU(" + std::to_string(t.rank + 1) + ")";
    case Family::B: return "SO(" + std::to_string(2 * t.rank + 1) + ")";
    case Family::C: return "Sp(" + std::to_string(t.rank) + ")";
    case Family::D: return "SO(" + std::to_string(2 * t.rank) + ")";
  }
  return "?";
}

int required_padding(const CartanType& factor) {
  check_family_rank(factor.family, factor.rank);
  const ChainNode tree = basic_root_tree(RootSystem::build(factor.family, factor.rank));
  return 2 * tree.basic_root_count() - factor.rank;
}

int required_padding(const std::vector<CartanType>& factors) {
  int p = 0;
  for (const auto& f : factors) p += required_padding(f);
  return p;
}

int max_supported_rank(Family family) {
  switch (family) {
    case Family::A: return 8;
    case Family::B: return 4;
    case Family::C: return 4;
    case Family::D: return 5;
  }
  return 0;
}

namespace {

int min_rank(Family family) {
  switch (family) {
    case Family::B: return 2;
    case Family::D: return 3;
    default: return 1;
  }
}

std::string u1_power(int n) {
  if (n <= 0) return "";
  return n == 1 ? "U(1)" : "U(1)^" + std::to_string(n);
}

// Chain entry built from the surgery tree alone, in the same order as
// basic_roots(): level by level, factors in order, children in surgery order.
struct ChainEntry {
  int factor = 0;
  int level = 0;
  int parent = -1;  // flat index
  const ChainNode* node = nullptr;
  std::string label;
};

struct CombinatorialChain {
  std::vector<RootSystem> systems;
  std::vector<ChainNode> trees;
  std::vector<ChainEntry> entries;
};

CombinatorialChain combinatorial_chain(const std::vector<CartanType>& factors) {
  CombinatorialChain c;
  for (const auto& t : factors) {
    check_family_rank(t.family, t.rank);
    c.systems.push_back(RootSystem::build(t.family, t.rank));
  }
  for (const auto& rs : c.systems) c.trees.push_back(basic_root_tree(rs));
  std::vector<ChainEntry> frontier;
  for (std::size_t f = 0; f < c.trees.size(); ++f) frontier.push_back({static_cast<int>(f), 0, -1, &c.trees[f], ""});
  while (!frontier.empty()) {
    std::vector<ChainEntry> next;
    for (auto& e : frontier) {
      e.label = c.systems[static_cast<std::size_t>(e.factor)].label(e.node->basic_root().coords);
      const int me = static_cast<int>(c.entries.size());
      c.entries.push_back(e);
      for (const auto& child : e.node->children) next.push_back({e.factor, e.level + 1, me, &child, ""});
    }
    frontier = std::move(next);
  }
  return c;
}

// Which chain entries are quotiented, resolved without building matrices.
struct Selection {
  std::vector<int> summands;                // flat chain indices
  std::vector<std::pair<int, int>> abelian; // (factor, level)
  std::vector<bool> removed;                // flat chain index -> inside a quotiented summand
  int dimension = 0;
  int padding = 0;
};

int abelian_dim(const CombinatorialChain& c, int factor, int level) {
  int d = c.systems[static_cast<std::size_t>(factor)].rank();
  for (const auto& e : c.entries) {
    if (e.factor != factor) continue;
    if (e.level < level) d -= 1;
    else if (e.level == level) d -= e.node->system.rank();
  }
  return d;
}

Selection select(const SpaceSpec& spec, const CombinatorialChain& c) {
  if (spec.u1_count < 0) throw PreconditionError("negative U(1) count");
  Selection s;
  s.removed.assign(c.entries.size(), false);
  std::map<int, int> factor_level;
  std::map<int, int> summand_level;
  for (const auto& item : spec.quotient)
    if (item.kind == QuotientKind::Summand)
      for (const auto& e : c.entries)
        if (e.factor == item.factor && e.level > 0 && e.label == item.root_label) summand_level.emplace(item.factor, e.level);
  for (const auto& item : spec.quotient) {
    if (item.factor < 0 || item.factor >= static_cast<int>(spec.factors.size())) {
      throw PreconditionError("quotient item refers to factor " + std::to_string(item.factor + 1) + " of " +
                              std::to_string(spec.factors.size()));
    }
    int level = item.level;
    if (item.kind == QuotientKind::Summand) {
      int found = -1;
      for (std::size_t j = 0; j < c.entries.size(); ++j) {
        const auto& e = c.entries[j];
        if (e.factor == item.factor && e.level > 0 && e.label == item.root_label && e.node->system.type() == item.type) {
          found = static_cast<int>(j);
          break;
        }
      }
      if (found < 0) {
        std::ostringstream os;
        os << item.type.name() << ":" << item.root_label << " is not a centralizer summand of "
           << group_name(spec.factors[static_cast<std::size_t>(item.factor)]) << "; available:";
        for (const auto& e : c.entries)
          if (e.factor == item.factor && e.level > 0) os << " " << e.node->system.name() << ":" << e.label;
        throw PreconditionError(os.str());
      }
      if (std::find(s.summands.begin(), s.summands.end(), found) != s.summands.end()) {
        throw PreconditionError("summand " + item.root_label + " listed twice");
      }
      s.summands.push_back(found);
      level = c.entries[static_cast<std::size_t>(found)].level;
    } else {
      if (level == 0) level = summand_level.count(item.factor) ? summand_level[item.factor] : 1;
      if (level < 1) throw PreconditionError("U(1) quotient level must be at least 1");
      const int d = abelian_dim(c, item.factor, level);
      if (d <= 0) {
        throw PreconditionError("the level-" + std::to_string(level) + " centralizer of " +
                                group_name(spec.factors[static_cast<std::size_t>(item.factor)]) +
                                " has no Abelian part");
      }
      for (const auto& [f, l] : s.abelian)
        if (f == item.factor) throw PreconditionError("at most one U(1) quotient per factor");
      s.abelian.emplace_back(item.factor, level);
    }
    auto [it, inserted] = factor_level.emplace(item.factor, level);
    if (!inserted && it->second != level) {
      throw PreconditionError("quotient items of one factor must come from a single centralizer level");
    }
  }
  for (int j : s.summands) s.removed[static_cast<std::size_t>(j)] = true;
  for (std::size_t j = 0; j < c.entries.size(); ++j) {
    const int p = c.entries[j].parent;
    if (p >= 0 && s.removed[static_cast<std::size_t>(p)]) s.removed[j] = true;
  }

  int dim = spec.u1_count, rank = 0, kept = 0;
  for (const auto& rs : c.systems) {
    dim += rs.dimension();
    rank += rs.rank();
  }
  for (int j : s.summands) {
    const auto& sys = c.entries[static_cast<std::size_t>(j)].node->system;
    dim -= sys.dimension();
    rank -= sys.rank();
  }
  for (const auto& [f, l] : s.abelian) {
    const int d = abelian_dim(c, f, l);
    dim -= d;
    rank -= d;
  }
  for (bool r : s.removed)
    if (!r) ++kept;
  s.dimension = dim;
  s.padding = 2 * kept - rank;
  return s;
}

int resolved_level(const SpaceSpec& spec, const CombinatorialChain& c, const QuotientItem& item) {
  if (item.kind == QuotientKind::Summand || item.level != 0) return item.level;
  for (const auto& other : spec.quotient)
    if (other.kind == QuotientKind::Summand && other.factor == item.factor)
      for (const auto& e : c.entries)
        if (e.factor == other.factor && e.level > 0 && e.label == other.root_label) return e.level;
  return 1;
}

std::string quotient_name(const SpaceSpec& spec, const CombinatorialChain& c) {
  std::vector<std::string> parts;
  for (const auto& item : spec.quotient) {
    if (item.kind == QuotientKind::Summand) parts.push_back(group_name(item.type));
    else parts.push_back(u1_power(abelian_dim(c, item.factor, resolved_level(spec, c, item))));
  }
  if (parts.size() == 1) return parts[0];
  std::string out = "(";
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? " x " : "") + parts[k];
  return out + ")";
}

}  // namespace

int required_padding(const SpaceSpec& spec) { return select(spec, combinatorial_chain(spec.factors)).padding; }

int tangent_dimension(const SpaceSpec& spec) { return select(spec, combinatorial_chain(spec.factors)).dimension; }

std::string space_name(const SpaceSpec& spec) {
  const CombinatorialChain c = combinatorial_chain(spec.factors);
  std::string out;
  for (std::size_t k = 0; k < spec.factors.size(); ++k) out += (k ? " x " : "") + group_name(spec.factors[k]);
  if (!spec.quotient.empty()) out += "/" + quotient_name(spec, c);
  if (spec.u1_count > 0) out += (out.empty() ? "" : " x ") + u1_power(spec.u1_count);
  return out;
}

std::vector<ClassificationRow> classify_family(Family family, int max_rank) {
  const int lo = min_rank(family), hi = max_supported_rank(family);
  if (max_rank < lo || max_rank > hi) {
    std::ostringstream os;
    os << "classify " << to_char(family) << ": max rank must lie in [" << lo << ", " << hi << "], got " << max_rank;
    throw UnsupportedFamilyRank(os.str());
  }
  std::vector<ClassificationRow> rows;
  for (int r = lo; r <= max_rank; ++r) {
    ClassificationRow row;
    row.type = {family, r};
    row.padding = required_padding(row.type);
    row.group = group_name(row.type);
    row.classical = classical_name(row.type);
    row.hkt_name = row.group + (row.padding > 0 ? " x " + u1_power(row.padding) : "");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SpaceSpec> enumerate_quotients(const CartanType& factor, int max_level) {
  check_family_rank(factor.family, factor.rank);
  if (factor.rank > max_supported_rank(factor.family)) {
    throw UnsupportedFamilyRank(factor.name() + " exceeds the supported catalog rank");
  }
  std::vector<SpaceSpec> out;
  SpaceSpec base;
  base.factors = {factor};
  base.u1_count = required_padding(factor);
  out.push_back(base);

  const CombinatorialChain c = combinatorial_chain(base.factors);
  int depth = 0;
  for (const auto& e : c.entries) depth = std::max(depth, e.level);
  for (int level = 1; level <= std::min(max_level, depth + 1); ++level) {
    std::vector<int> here;
    for (std::size_t j = 0; j < c.entries.size(); ++j)
      if (c.entries[j].level == level) here.push_back(static_cast<int>(j));
    const int ab = abelian_dim(c, 0, level);
    const bool new_abelian = ab > 0 && (level == 1 || ab != abelian_dim(c, 0, level - 1));

    auto emit = [&](unsigned mask, bool with_abelian) {
      SpaceSpec s = base;
      s.quotient.clear();
      for (std::size_t k = 0; k < here.size(); ++k)
        if (mask & (1u << k)) {
          const auto& e = c.entries[static_cast<std::size_t>(here[k])];
          s.quotient.push_back({QuotientKind::Summand, 0, e.node->system.type(), e.label, level});
        }
      if (with_abelian) s.quotient.push_back({QuotientKind::Abelian, 0, {}, "", level});
      const Selection sel = select(s, c);
      if (sel.padding < 0) return;
      s.u1_count = sel.padding;
      out.push_back(std::move(s));
    };
    for (unsigned mask = 1; mask < (1u << here.size()); ++mask) {
      emit(mask, false);
      if (ab > 0) emit(mask, true);
    }
    if (new_abelian) emit(0, true);
  }
  return out;
}

ResolvedSpace resolve_space(const SpaceSpec& spec, double tol) {
  const CombinatorialChain c = combinatorial_chain(spec.factors);
  const Selection sel = select(spec, c);
  ResolvedSpace r;
  r.rep = build_matrix_rep(spec.factors, spec.u1_count);
  r.chain = basic_roots(r.rep, tol);
  r.dimension = sel.dimension;
  r.padding_required = sel.padding;
  const auto flat = r.chain.flat();
  if (flat.size() != c.entries.size()) throw ConstructionError("basic-root chain size differs from the surgery tree");
  for (std::size_t j = 0; j < flat.size(); ++j) {
    if (flat[j].label != c.entries[j].label || flat[j].factor != c.entries[j].factor) {
      throw ConstructionError("basic-root chain order differs from the surgery tree at " + flat[j].label);
    }
    if (!sel.removed[j]) r.retained.push_back(flat[j]);
  }

  const int n = r.rep.dimension();
  std::vector<RVector> cols;
  auto unit = [n](int k) {
    RVector v = RVector::Zero(n);
    v(k) = 1.0;
    return v;
  };
  for (int j : sel.summands) {
    const BasicRoot& b = flat[static_cast<std::size_t>(j)];
    const RootSystem& parent = r.rep.factor(b.factor).roots;
    for (const auto& alpha : b.summand.positive_roots()) {
      const auto& e = r.rep.root_entry(b.factor, *parent.positive_index(alpha.coords));
      cols.push_back(unit(e.re));
      cols.push_back(unit(e.im));
    }
    for (const auto& s : b.summand.simple_roots()) cols.push_back(r.rep.real_coordinates(r.rep.coroot_matrix(b.factor, s.coords)));
  }
  for (const auto& [f, level] : sel.abelian) {
    const FactorBlock& fb = r.rep.factor(f);
    std::vector<RVector> fixed;
    for (const auto& b : flat) {
      if (b.factor != f) continue;
      if (b.level < level) fixed.push_back(r.rep.real_coordinates(r.rep.coroot_matrix(f, b.root)));
      else if (b.level == level)
        for (const auto& s : b.summand.simple_roots()) fixed.push_back(r.rep.real_coordinates(r.rep.coroot_matrix(f, s.coords)));
    }
    std::vector<int> gens;
    for (int g : r.rep.csa_indices())
      if (g >= fb.generator_offset && g < fb.generator_offset + fb.generator_count) gens.push_back(g);
    RMatrix m(n, static_cast<Eigen::Index>(fixed.size() + gens.size()));
    Eigen::Index k = 0;
    for (const auto& v : fixed) m.col(k++) = v;
    for (int g : gens) m.col(k++) = unit(g);
    const auto head = gram_schmidt(m.leftCols(static_cast<Eigen::Index>(fixed.size())), 1e-8).cols();
    const RMatrix q = gram_schmidt(m, 1e-8);
    const int expect = abelian_dim(c, f, level);
    if (q.cols() - head != expect) {
      throw ConstructionError("Abelian centralizer part has dimension " + std::to_string(q.cols() - head) +
                              ", expected " + std::to_string(expect));
    }
    for (Eigen::Index j = head; j < q.cols(); ++j) cols.push_back(q.col(j));
  }
  RMatrix h(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) h.col(static_cast<Eigen::Index>(k)) = cols[k];
  r.h_basis = cols.empty() ? RMatrix(n, 0) : gram_schmidt(h, 1e-8);
  if (n - r.h_basis.cols() != r.dimension) {
    throw ConstructionError("quotient subalgebra dimension does not match the surgery count");
  }
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Failed: return "failed";
    case Verdict::NotAdmissible: return "not-admissible";
  }
  return "?";
}

double VerificationReport::max_residual() const {
  double m = std::max({quaternion, anticommutator, automorphism_orthogonality, automorphism_invariance, jacobi});
  for (const auto& s : structures) m = std::max({m, s.residuals.max(), s.leakage});
  return m;
}

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

void check(VerificationReport& r, const std::string& what, double value, double limit) {
  if (!(value <= limit)) r.failures.push_back(what + " residual " + sci(value) + " exceeds " + sci(limit));
}

void finish(VerificationReport& r) {
  const double tol = r.tolerance;
  for (const auto& s : r.structures) {
    check(r, s.name + " integrability", s.residuals.integrability, tol);
    check(r, s.name + " square", s.residuals.square, tol);
    check(r, s.name + " Bismut", s.residuals.bismut, tol);
    check(r, s.name + " torsion", s.residuals.torsion_match, std::max(tol, 1e-8));
    check(r, s.name + " Nijenhuis", s.residuals.nijenhuis, std::max(tol, 1e-5));
    if (!s.residuals.warning.empty()) r.warnings.push_back(s.name + ": " + s.residuals.warning);
  }
  check(r, "quaternion", r.quaternion, tol);
  check(r, "anticommutator", r.anticommutator, tol);
  check(r, "automorphism orthogonality", r.automorphism_orthogonality, tol);
  check(r, "automorphism invariance", r.automorphism_invariance, tol);
  check(r, "Jacobi", r.jacobi, tol);
  r.verdict = r.failures.empty() ? Verdict::Certified : Verdict::Failed;
  r.message = r.failures.empty() ? "certified" : r.failures.front();
}

VerificationReport header(const SpaceSpec& spec, const VerifyOptions& o, const Selection& sel) {
  VerificationReport r;
  r.spec = spec;
  r.name = space_name(spec);
  r.tolerance = o.tol;
  r.dimension = sel.dimension;
  r.padding_required = sel.padding;
  return r;
}

bool admissible(VerificationReport& r) {
  const int p = r.padding_required;
  if (p >= 0 && r.spec.u1_count == p && r.dimension > 0 && r.dimension % 4 == 0) return true;
  r.verdict = Verdict::NotAdmissible;
  std::ostringstream os;
  if (p < 0) {
    os << r.name << " has " << -p << " more CSA direction(s) than paired basic coroots; no U(1) padding helps";
  } else {
    os << r.name << " requires " << p << " U(1) factor" << (p == 1 ? "" : "s") << " (got " << r.spec.u1_count << ")";
  }
  r.message = os.str();
  return false;
}

void fill_automorphisms(VerificationReport& r, const QuaternionTriple& t, const std::vector<BasicRoot>& roots) {
  for (const auto& b : roots) r.basic_roots_used.push_back(b.label);
  for (std::size_t k = 0; k < t.j_chain.size(); ++k)
    r.automorphisms.push_back(to_string(t.j_chain[k].kind) + ":" + roots[k].label);
  r.anticommutator = t.anticommutator;
  r.automorphism_orthogonality = t.orthogonality;
  r.automorphism_invariance = t.invariance;
}

VerificationReport verify_group(const SpaceSpec& spec, const VerifyOptions& o, const Selection& sel) {
  VerificationReport r = header(spec, o, sel);
  if (!admissible(r)) return r;
  const AlgebraRep rep = build_matrix_rep(spec.factors, spec.u1_count);
  const StructureConstants f = structure_constants(rep);
  const BasicRootChain chain = basic_roots(rep, o.tol);
  const auto roots = chain.flat();
  const CsaPairing pairing = build_pairing(rep, roots);
  const ComplexStructure i = canonical_I(rep, pairing);
  const BlockFrame frame = build_block_frame(rep, roots, pairing);
  const QuaternionTriple t = assemble_triple(rep, f, i.matrix(), roots, frame, o.tol);
  fill_automorphisms(r, t, roots);
  for (const auto* x : {&t.I, &t.J, &t.K}) {
    StructureReport s;
    s.name = x == &t.I ? "I" : x == &t.J ? "J" : "K";
    s.residuals = geometry_residuals(x->matrix(), f, o.tol, o.fd_step);
    s.blocks = x->blocks();
    r.structures.push_back(std::move(s));
  }
  r.quaternion = quaternion_residual(t.I, t.J, t.K);
  if (o.jacobi) r.jacobi = jacobi_residual(f);
  finish(r);
  return r;
}

VerificationReport verify_coset(const SpaceSpec& spec, const VerifyOptions& o, const Selection& sel) {
  VerificationReport r = header(spec, o, sel);
  if (!admissible(r)) return r;
  const ResolvedSpace space = resolve_space(spec, o.tol);
  const AlgebraRep& rep = space.rep;
  const int n = rep.dimension();
  const StructureConstants f = structure_constants(rep);
  const RMatrix& hb = space.h_basis;
  const RMatrix ph = hb * hb.transpose();

  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : rep.root_vector_table()) {
    const RVector re = RVector::Unit(n, e.re);
    if ((ph * re).norm() < 1e-8) pairs.emplace_back(e.re, e.im);
  }
  const CsaPairing pairing = build_pairing(rep, space.retained, hb);
  const ComplexStructure iv = canonical_I_on(n, pairs, pairing);
  const BlockFrame frame = build_block_frame(rep, space.retained, pairing);
  const RMatrix& w = frame.basis;
  if (w.cols() != space.dimension || max_abs(w.transpose() * w - RMatrix::Identity(w.cols(), w.cols())) > 1e-10 ||
      max_abs(hb.transpose() * w) > 1e-10) {
    throw ConstructionError("coset block frame does not span the tangent space of " + r.name);
  }
  const QuaternionTriple t = assemble_triple(rep, f, iv.matrix(), space.retained, frame, o.tol);
  fill_automorphisms(r, t, space.retained);

  const StructureConstants fw = restrict_structure_constants(f, w);
  const RMatrix pv = w * w.transpose();
  std::vector<RMatrix> restricted;
  for (const auto* x : {&t.I, &t.J, &t.K}) {
    StructureReport s;
    s.name = x == &t.I ? "I" : x == &t.J ? "J" : "K";
    const RMatrix& m = x->matrix();
    s.leakage = max_abs(m - pv * m * pv);
    if (s.leakage > o.tol) {
      int worst = 0;
      double worst_leak = -1.0;
      for (int b = 0; b < frame.block_count(); ++b) {
        const double leak = max_abs(ph * m * w.middleCols(4 * b, 4));
        if (leak > worst_leak) worst_leak = leak, worst = b;
      }
      r.failures.push_back(s.name + " does not preserve the tangent space; block " + frame.labels[worst] +
                           " leaks " + sci(worst_leak) + " into the quotient");
    }
    restricted.push_back(w.transpose() * m * w);
    s.residuals = geometry_residuals(restricted.back(), fw, o.tol, o.fd_step);
    s.blocks = x->blocks();
    r.structures.push_back(std::move(s));
  }
  r.quaternion = quaternion_residual(restricted[0], restricted[1], restricted[2]);
  r.anticommutator = max_abs(restricted[0] * restricted[1] + restricted[1] * restricted[0]);
  if (o.jacobi) r.jacobi = jacobi_residual(f);
  if (hb.cols() > 0) {
    RMatrix wh(n, w.cols() + hb.cols());
    wh << w, hb;
    const StructureConstants g = restrict_structure_constants(f, wh);
    double m = 0.0;
    for (int a = 0; a < w.cols(); ++a)
      for (int b = 0; b < w.cols(); ++b)
        for (int c = static_cast<int>(w.cols()); c < g.dim(); ++c) m = std::max(m, std::abs(g(a, b, c)));
    r.coset_closure_residual = m;
  }
  finish(r);
  return r;
}

}  // namespace

VerificationReport verify(const SpaceSpec& spec, const VerifyOptions& options) {
  const Selection sel = select(spec, combinatorial_chain(spec.factors));
  return spec.is_group() ? verify_group(spec, options, sel) : verify_coset(spec, options, sel);
}

VerificationReport build_coset_triple(const SpaceSpec& spec, const VerifyOptions& options) {
  if (spec.is_group()) throw PreconditionError("build_coset_triple needs a non-empty quotient");
  return verify_coset(spec, options, select(spec, combinatorial_chain(spec.factors)));
}

}  // namespace hkt
