#include "hkt/autom.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hkt/error.hpp"

namespace hkt {

std::string to_string(AutomorphismKind kind) { return kind == AutomorphismKind::JKind ? "J" : "K"; }

double Automorphism::orthogonality_residual() const {
  return max_abs(matrix * matrix.transpose() - RMatrix::Identity(matrix.rows(), matrix.cols()));
}

Automorphism automorphism_from_root(const AlgebraRep& rep, int factor, const Coords& theta, AutomorphismKind kind,
                                    double tol) {
  const CMatrix ep = rep.root_vector(factor, theta);
  const CMatrix em = rep.root_vector(factor, -theta);
  const double quarter = std::acos(-1.0) / 4.0;
  const CMatrix gen = kind == AutomorphismKind::JKind ? CMatrix(Complex(0, quarter) * (ep + em))
                                                      : CMatrix(quarter * (ep - em));
  Automorphism a;
  a.unitary = expm(gen);
  a.factor = factor;
  a.root = theta;
  a.kind = kind;
  const int n = rep.dimension();
  const double c = rep.norm_const();
  const CMatrix ud = a.unitary.adjoint();
  a.matrix.resize(n, n);
  for (int b = 0; b < n; ++b) {
    const CMatrix moved = ud * rep.generator(b) * a.unitary;
    for (int r = 0; r < n; ++r) a.matrix(r, b) = trace_product(moved, rep.generator(r)).real() / c;
  }
  const double orth = a.orthogonality_residual();
  if (orth > std::max(tol, 1e-10) * 100) {
    std::ostringstream os;
    os << "automorphism for root " << rep.factor(factor).roots.label(theta) << " is not orthogonal (residual " << orth
       << ")";
    throw ConstructionError(os.str());
  }
  return a;
}

double invariance_residual(const RMatrix& omega, const StructureConstants& f) {
  const StructureConstants moved = restrict_structure_constants(f, omega.transpose());
  return torsion_match_residual(moved, f);
}

namespace {

RVector unit(int n, int k) {
  RVector v = RVector::Zero(n);
  v(k) = 1.0;
  return v;
}

// Real matrix whose null space is the set of coefficient vectors x with
// [x . t, E_{+-theta}] = 0 for all thetas, restricted to the given generators.
RMatrix commutant_system(const AlgebraRep& rep, const std::vector<RootRef>& thetas, const std::vector<int>& gens) {
  const Eigen::Index d = rep.matrix_dim();
  const Eigen::Index block = 2 * d * d;
  RMatrix m = RMatrix::Zero(static_cast<Eigen::Index>(2 * thetas.size()) * block, static_cast<Eigen::Index>(gens.size()));
  Eigen::Index row = 0;
  for (const auto& th : thetas) {
    for (int sign : {1, -1}) {
      const CMatrix e = rep.root_vector(th.factor, sign * th.root);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        const CMatrix comm = commutator(rep.generator(gens[g]), e);
        Eigen::Index k = row;
        for (Eigen::Index i = 0; i < d; ++i)
          for (Eigen::Index j = 0; j < d; ++j) {
            m(k++, static_cast<Eigen::Index>(g)) = comm(i, j).real();
            m(k++, static_cast<Eigen::Index>(g)) = comm(i, j).imag();
          }
      }
      row += block;
    }
  }
  return m;
}

// Splits a closed set of positive roots into irreducible root systems ordered
// by their smallest simple-root index in the factor.
std::vector<RootSystem> decompose(const RootSystem& parent, const std::vector<Coords>& roots) {
  const std::set<Coords> all(roots.begin(), roots.end());
  std::vector<Coords> simple;
  for (const auto& r : roots) {
    bool decomposable = false;
    for (const auto& s : roots)
      if (s != r && all.count(r - s)) {
        decomposable = true;
        break;
      }
    if (!decomposable) simple.push_back(r);
  }
  std::vector<int> comp(simple.size(), -1);
  int ncomp = 0;
  for (std::size_t i = 0; i < simple.size(); ++i) {
    if (comp[i] >= 0) continue;
    std::vector<std::size_t> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < simple.size(); ++b)
        if (comp[b] < 0 && dot(simple[a], simple[b]) != 0) {
          comp[b] = ncomp;
          stack.push_back(b);
        }
    }
    ++ncomp;
  }
  auto first_index = [&](const RootSystem& rs) {
    int best = 1 << 30;
    for (const auto& s : rs.simple_roots()) {
      const auto& coeffs = parent.find(s.coords)->simple_coeffs;
      for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (coeffs[k] != 0) best = std::min(best, static_cast<int>(k));
    }
    return best;
  };
  std::vector<RootSystem> out;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<Coords> part;
    for (std::size_t i = 0; i < simple.size(); ++i)
      if (comp[i] == c) part.push_back(simple[i]);
    out.push_back(RootSystem::from_simple_roots(part));
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](const RootSystem& a, const RootSystem& b) { return first_index(a) < first_index(b); });
  return out;
}

std::vector<std::pair<CartanType, Coords>> signature(const std::vector<RootSystem>& systems) {
  std::vector<std::pair<CartanType, Coords>> out;
  for (const auto& s : systems) out.emplace_back(s.type(), s.highest_root().coords);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Centralizer centralizer(const AlgebraRep& rep, const std::vector<RootRef>& thetas, double tol) {
  const int n = rep.dimension();
  for (const auto& th : thetas)
    if (!rep.factor(th.factor).roots.is_root(th.root)) throw PreconditionError("centralizer: theta is not a root");

  std::vector<int> all(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) all[static_cast<std::size_t>(a)] = a;
  const double null_tol = std::max(tol, 1e-9);
  Centralizer out;
  out.basis = null_space(commutant_system(rep, thetas, all), null_tol);
  const RMatrix proj = out.basis * out.basis.transpose();

  std::vector<RVector> summand_csa;
  for (std::size_t f = 0; f < rep.factors().size(); ++f) {
    const int fi = static_cast<int>(f);
    const RootSystem& rs = rep.factor(fi).roots;
    std::vector<Coords> inside;
    for (std::size_t k = 0; k < rs.positive_roots().size(); ++k) {
      const auto& e = rep.root_entry(fi, k);
      const RVector ur = unit(n, e.re), ui = unit(n, e.im);
      if ((proj * ur - ur).norm() < 1e-6 && (proj * ui - ui).norm() < 1e-6) inside.push_back(rs.positive_roots()[k].coords);
    }
    for (auto& sys : decompose(rs, inside)) {
      for (const auto& s : sys.simple_roots()) {
        RVector v = rep.real_coordinates(rep.coroot_matrix(fi, s.coords));
        summand_csa.push_back(v);
      }
      out.summands.push_back({fi, std::move(sys)});
    }
  }

  // CSA part of the centralizer, then the piece orthogonal to the summands.
  std::vector<int> abelian_gens = rep.csa_indices();
  abelian_gens.insert(abelian_gens.end(), rep.u1_indices().begin(), rep.u1_indices().end());
  const RMatrix csa_null = null_space(commutant_system(rep, thetas, abelian_gens), null_tol);
  RMatrix cols(n, static_cast<Eigen::Index>(summand_csa.size()) + csa_null.cols());
  Eigen::Index c = 0;
  for (const auto& v : summand_csa) cols.col(c++) = v;
  for (Eigen::Index k = 0; k < csa_null.cols(); ++k) {
    RVector v = RVector::Zero(n);
    for (std::size_t g = 0; g < abelian_gens.size(); ++g) v(abelian_gens[g]) = csa_null(static_cast<Eigen::Index>(g), k);
    cols.col(c++) = v;
  }
  const RMatrix q = gram_schmidt(cols, 1e-8);
  const auto ns = static_cast<Eigen::Index>(gram_schmidt(cols.leftCols(static_cast<Eigen::Index>(summand_csa.size())), 1e-8).cols());
  out.abelian_basis = q.rightCols(q.cols() - ns);

  if (thetas.size() == 1) {
    const RootSystem& rs = rep.factor(thetas[0].factor).roots;
    if (thetas[0].root == rs.highest_root().coords) {
      std::vector<RootSystem> mine;
      for (const auto& s : out.summands)
        if (s.factor == thetas[0].factor) mine.push_back(s.system);
      const SurgeryResult surgery = extended_dynkin_surgery(rs);
      if (signature(mine) != signature(surgery.summands)) {
        throw ConstructionError("centralizer of the highest root of " + rs.name() +
                                " disagrees with extended Dynkin surgery");
      }
    }
  }
  return out;
}

std::size_t BasicRootChain::size() const {
  std::size_t n = 0;
  for (const auto& l : levels) n += l.size();
  return n;
}

std::vector<BasicRoot> BasicRootChain::flat() const {
  std::vector<BasicRoot> out;
  for (const auto& l : levels) out.insert(out.end(), l.begin(), l.end());
  return out;
}

BasicRootChain basic_roots(const AlgebraRep& rep, double tol) {
  BasicRootChain chain;
  // (node, parent index in previous level)
  std::vector<std::pair<const ChainNode*, int>> frontier;
  std::vector<ChainNode> trees;
  trees.reserve(rep.factors().size());
  for (const auto& fb : rep.factors()) trees.push_back(basic_root_tree(fb.roots));
  std::vector<int> frontier_factor;
  for (std::size_t f = 0; f < trees.size(); ++f) {
    frontier.emplace_back(&trees[f], -1);
    frontier_factor.push_back(static_cast<int>(f));
  }
  int max_rank = 0;
  for (const auto& fb : rep.factors()) max_rank = std::max(max_rank, fb.roots.rank());

  int level = 0;
  while (!frontier.empty()) {
    if (level > max_rank) throw ConstructionError("basic-root chain did not terminate within rank levels");
    std::vector<BasicRoot> current;
    std::vector<std::pair<const ChainNode*, int>> next;
    std::vector<int> next_factor;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      const ChainNode* node = frontier[k].first;
      const int f = frontier_factor[k];
      BasicRoot b;
      b.factor = f;
      b.level = level;
      b.root = node->basic_root().coords;
      b.summand = node->system;
      b.label = rep.factor(f).roots.label(b.root);
      b.parent = frontier[k].second;
      current.push_back(std::move(b));
      for (const auto& child : node->children) {
        next.emplace_back(&child, static_cast<int>(k));
        next_factor.push_back(f);
      }
    }
    chain.levels.push_back(std::move(current));

    if (!next.empty()) {
      std::vector<RootRef> so_far;
      for (const auto& l : chain.levels)
        for (const auto& b : l) so_far.push_back({b.factor, b.root});
      const Centralizer cz = centralizer(rep, so_far, tol);
      for (std::size_t f = 0; f < rep.factors().size(); ++f) {
        std::vector<RootSystem> numeric, combinatorial;
        for (const auto& s : cz.summands)
          if (s.factor == static_cast<int>(f)) numeric.push_back(s.system);
        for (std::size_t k = 0; k < next.size(); ++k)
          if (next_factor[k] == static_cast<int>(f)) combinatorial.push_back(next[k].first->system);
        if (signature(numeric) != signature(combinatorial)) {
          throw ConstructionError("level-" + std::to_string(level + 1) + " centralizer of " +
                                  rep.factor(static_cast<int>(f)).roots.name() + " disagrees with the surgery tree");
        }
      }
    }
    frontier = std::move(next);
    frontier_factor = std::move(next_factor);
    ++level;
  }

  const auto all = chain.flat();
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b)
      if (all[a].factor == all[b].factor && dot(all[a].root, all[b].root) != 0) {
        throw ConstructionError("basic roots " + all[a].label + " and " + all[b].label + " are not orthogonal");
      }
  return chain;
}

CsaPairing build_pairing(const AlgebraRep& rep, const std::vector<BasicRoot>& roots, const RMatrix& excluded) {
  const int n = rep.dimension();
  CsaPairing p;
  for (const auto& b : roots) {
    RVector v = rep.real_coordinates(rep.coroot_matrix(b.factor, b.root));
    p.t.push_back(v / v.norm());
  }
  std::vector<int> gens = rep.csa_indices();
  gens.insert(gens.end(), rep.u1_indices().begin(), rep.u1_indices().end());
  std::sort(gens.begin(), gens.end());

  const Eigen::Index fixed = static_cast<Eigen::Index>(p.t.size()) + excluded.cols();
  RMatrix cols(n, fixed + static_cast<Eigen::Index>(gens.size()));
  Eigen::Index c = 0;
  for (const auto& t : p.t) cols.col(c++) = t;
  for (Eigen::Index k = 0; k < excluded.cols(); ++k) cols.col(c++) = excluded.col(k);
  for (int g : gens) cols.col(c++) = unit(n, g);
  const RMatrix head = gram_schmidt(cols.leftCols(fixed), 1e-8);
  // Gram-Schmidt in order; the directions beyond the fixed span are the e_k.
  std::vector<RVector> kept;
  for (Eigen::Index k = 0; k < head.cols(); ++k) kept.push_back(head.col(k));
  std::vector<RVector> leftovers;
  for (int g : gens) {
    RVector v = unit(n, g);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : kept) v -= q.dot(v) * q;
    const double len = v.norm();
    if (len > 1e-8) {
      v /= len;
      kept.push_back(v);
      leftovers.push_back(v);
    }
  }
  if (leftovers.size() != p.t.size()) {
    const int need = static_cast<int>(p.t.size()) - static_cast<int>(leftovers.size());
    std::ostringstream os;
    os << "CSA pairing needs " << p.t.size() << " leftover directions but " << leftovers.size() << " are available ("
       << (need > 0 ? "add " : "remove ") << std::abs(need) << " U(1) factor" << (std::abs(need) == 1 ? "" : "s") << ")";
    throw PreconditionError(os.str());
  }
  p.e = std::move(leftovers);
  return p;
}

BlockFrame build_block_frame(const AlgebraRep& rep, const std::vector<BasicRoot>& roots, const CsaPairing& pairing) {
  const int n = rep.dimension();
  std::vector<RVector> cols;
  BlockFrame frame;
  auto pair_cols = [&](int f, const Coords& r) {
    const auto& e = rep.root_entry(f, *rep.factor(f).roots.positive_index(r));
    cols.push_back(unit(n, e.re));
    cols.push_back(unit(n, e.im));
  };
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const auto& b = roots[k];
    const RootSystem& parent = rep.factor(b.factor).roots;
    pair_cols(b.factor, b.root);
    cols.push_back(pairing.t[k]);
    cols.push_back(pairing.e[k]);
    frame.labels.push_back(b.label);
    const Coords cr = coroot(b.root);
    std::set<Coords> used;
    for (const auto& alpha : b.summand.positive_roots()) {
      if (alpha.coords == b.root || dot(alpha.coords, cr) != 1 || used.count(alpha.coords)) continue;
      const Coords beta = b.root - alpha.coords;
      used.insert(alpha.coords);
      used.insert(beta);
      // Order the pair by position in the factor's positive roots.
      Coords first = alpha.coords, second = beta;
      if (*parent.positive_index(second) < *parent.positive_index(first)) std::swap(first, second);
      pair_cols(b.factor, first);
      pair_cols(b.factor, second);
      frame.labels.push_back(parent.label(first) + "|" + parent.label(second));
    }
  }
  frame.basis.resize(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) frame.basis.col(static_cast<Eigen::Index>(k)) = cols[k];
  return frame;
}

QuaternionTriple assemble_triple(const AlgebraRep& rep, const StructureConstants& f, const RMatrix& i,
                                 const std::vector<BasicRoot>& roots, const BlockFrame& frame, double tol) {
  const int n = rep.dimension();
  QuaternionTriple t;
  t.frame = frame;
  RMatrix omega = RMatrix::Identity(n, n), omega_k = RMatrix::Identity(n, n);
  for (const auto& b : roots) {
    Automorphism aj = automorphism_from_root(rep, b.factor, b.root, AutomorphismKind::JKind, tol);
    Automorphism ak = automorphism_from_root(rep, b.factor, b.root, AutomorphismKind::KKind, tol);
    aj.level = ak.level = b.level;
    for (const auto* a : {&aj, &ak}) {
      t.orthogonality = std::max(t.orthogonality, a->orthogonality_residual());
      t.invariance = std::max(t.invariance, invariance_residual(a->matrix, f));
    }
    omega = aj.matrix * omega;
    omega_k = ak.matrix * omega_k;
    t.j_chain.push_back(std::move(aj));
    t.k_chain.push_back(std::move(ak));
  }
  const RMatrix j = omega * i * omega.transpose();
  const RMatrix k = i * j;
  const RMatrix kp = omega_k * i * omega_k.transpose();
  t.I = ComplexStructure(i).tagged(frame);
  t.J = ComplexStructure(j).tagged(frame);
  t.K = ComplexStructure(k).tagged(frame);
  t.K_prime = ComplexStructure(kp).tagged(frame);
  t.k_prime_difference = max_abs(k - kp);
  t.anticommutator = max_abs(i * j + j * i);
  for (int b = 0; b < frame.block_count(); ++b) {
    const RMatrix kb = frame.block(k, b), kpb = frame.block(kp, b);
    t.k_prime_block_signs.push_back(max_abs(kb - kpb) <= 1e-9 ? 1 : max_abs(kb + kpb) <= 1e-9 ? -1 : 0);
  }
  return t;
}

QuaternionTriple build_quaternion_triple(const AlgebraRep& rep, const BasicRootChain& chain,
                                         const CsaPairing& pairing, double tol) {
  const auto roots = chain.flat();
  if (pairing.size() != roots.size()) {
    throw PreconditionError("pairing has " + std::to_string(pairing.size()) + " pairs for " +
                            std::to_string(roots.size()) + " basic roots");
  }
  const ComplexStructure i = canonical_I(rep, pairing);
  const BlockFrame frame = build_block_frame(rep, roots, pairing);
  return assemble_triple(rep, structure_constants(rep), i.matrix(), roots, frame, tol);
}

}  // namespace hkt
