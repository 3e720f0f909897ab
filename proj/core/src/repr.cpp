#include "stabreg/repr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace stabreg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_residual_pairs(const UnitaryRep& tau) {
  const auto& g = *tau.group();
  const std::size_t n = g.order();
  double worst = 0;
  auto check = [&](Element a, Element b) {
    const CMatrix diff = tau(g.mul(a, b)) - tau(a) * tau(b);
    // ||.||_op <= ||.||_F, so the SVD only matters when it could raise worst.
    if (diff.norm() > worst) worst = std::max(worst, operator_norm(diff));
  };
  if (n <= 64) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        check(static_cast<Element>(a), static_cast<Element>(b));
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < 100000; ++i)
      check(static_cast<Element>(pick(rng)), static_cast<Element>(pick(rng)));
  }
  return worst;
}

// Sort key making the irrep order independent of the random basis.
bool irrep_less(const IrrepData& x, const IrrepData& y) {
  if (x.rep.dim() != y.rep.dim()) return x.rep.dim() < y.rep.dim();
  auto rnd = [](double v) { return std::llround(v * 1e6); };
  for (std::size_t g = 0; g < x.character.size(); ++g) {
    const auto xr = rnd(x.character[g].real()), yr = rnd(y.character[g].real());
    if (xr != yr) return xr > yr;
    const auto xi = rnd(x.character[g].imag()), yi = rnd(y.character[g].imag());
    if (xi != yi) return xi > yi;
  }
  return false;
}

double max_char_diff(const std::vector<Complex>& a,
                     const std::vector<Complex>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

CMatrix random_hermitian(std::size_t m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      x(i, j) = Complex(normal(rng), normal(rng));
  return (x + x.adjoint()) * 0.5;
}

// Rows of V permuted by the left regular action: (rho(g) V)[g x] = V[x].
CMatrix regular_apply(const FiniteGroup& g, Element h, const CMatrix& v) {
  CMatrix out(v.rows(), v.cols());
  for (std::size_t x = 0; x < g.order(); ++x)
    out.row(g.mul(h, static_cast<Element>(x))) = v.row(static_cast<Eigen::Index>(x));
  return out;
}

class RegularSplitter {
 public:
  RegularSplitter(const GroupPtr& group, const DecomposeOptions& opts,
                  std::uint64_t seed)
      : group_(group), opts_(opts), rng_(seed) {}

  // Orthonormal bases (n x d) of irreducible invariant subspaces spanning
  // C^n.
  std::vector<CMatrix> run() {
    const std::size_t n = group_->order();
    const CMatrix h = random_hermitian(n, rng_);
    CMatrix avg = CMatrix::Zero(static_cast<Eigen::Index>(n),
                                static_cast<Eigen::Index>(n));
    // sum over g of rho(g) H rho(g)^-1, entrywise H[g^-1 u, g^-1 v]
    for (std::size_t t = 0; t < n; ++t) {
      const auto row = group_->row(static_cast<Element>(t));
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
          avg(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) +=
              h(row[u], row[v]);
    }
    avg /= static_cast<double>(n);
    std::vector<CMatrix> out;
    split_hermitian(CMatrix::Identity(static_cast<Eigen::Index>(n),
                                      static_cast<Eigen::Index>(n)),
                    avg, out, 0);
    return out;
  }

 private:
  // `basis` spans an invariant subspace; `avg` is a commutant element
  // expressed in that basis.
  void split_hermitian(const CMatrix& basis, const CMatrix& avg,
                       std::vector<CMatrix>& out, int depth) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(avg);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("eigensolver failed");
    const auto& lambda = es.eigenvalues();
    const Eigen::Index m = lambda.size();
    const double scale = std::max(
        {std::abs(lambda(0)), std::abs(lambda(m - 1)), 1e-300});
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= m; ++i) {
      if (i == m || lambda(i) - lambda(i - 1) >= opts_.cluster_gap * scale) {
        const CMatrix sub = basis * es.eigenvectors().middleCols(start, i - start);
        handle_subspace(sub, out, depth);
        start = i;
      }
    }
  }

  void handle_subspace(const CMatrix& sub, std::vector<CMatrix>& out,
                       int depth) {
    const auto chi = subspace_character(sub);
    const double norm = character_inner(chi, chi).real();
    const double rounded = std::round(norm);
    if (rounded < 1 || std::abs(norm - rounded) > 1e-6)
      throw std::runtime_error("non-integral character norm " +
                               std::to_string(norm));
    if (rounded == 1) {
      out.push_back(sub);
      return;
    }
    if (depth > 8) throw std::runtime_error("subspace split did not converge");
    // Restrict the action to the subspace and split with a fresh commutant
    // element.
    const auto& g = *group_;
    const auto d = static_cast<std::size_t>(sub.cols());
    const CMatrix k = random_hermitian(d, rng_);
    CMatrix avg = CMatrix::Zero(sub.cols(), sub.cols());
    for (std::size_t t = 0; t < g.order(); ++t) {
      const CMatrix sigma = sub.adjoint() * regular_apply(g, static_cast<Element>(t), sub);
      avg += sigma * k * sigma.adjoint();
    }
    avg /= static_cast<double>(g.order());
    split_hermitian(sub, avg, out, depth + 1);
  }

  std::vector<Complex> subspace_character(const CMatrix& sub) const {
    const auto& g = *group_;
    const std::size_t n = g.order();
    std::vector<Complex> chi(n);
    for (std::size_t t = 0; t < n; ++t) {
      Complex s = 0;
      const auto row = g.row(static_cast<Element>(t));
      for (std::size_t x = 0; x < n; ++x)
        s += sub.row(row[x]).dot(sub.row(static_cast<Eigen::Index>(x)));
      chi[t] = s;
    }
    return chi;
  }

  GroupPtr group_;
  const DecomposeOptions& opts_;
  std::mt19937_64 rng_;
};

std::vector<IrrepData> decompose_once(const GroupPtr& group,
                                      const DecomposeOptions& opts,
                                      std::uint64_t seed) {
  const auto& g = *group;
  const std::size_t n = g.order();
  RegularSplitter splitter(group, opts, seed);
  const auto bases = splitter.run();

  struct Class {
    CMatrix basis;
    std::vector<Complex> chi;
    int copies = 0;
  };
  std::vector<Class> classes;
  for (const auto& b : bases) {
    std::vector<Complex> chi(n);
    for (std::size_t t = 0; t < n; ++t) {
      const CMatrix tau = b.adjoint() * regular_apply(g, static_cast<Element>(t), b);
      chi[t] = tau.trace();
    }
    auto it = std::find_if(classes.begin(), classes.end(), [&](const Class& c) {
      return max_char_diff(c.chi, chi) < 1e-6;
    });
    if (it == classes.end())
      classes.push_back({b, std::move(chi), 1});
    else
      ++it->copies;
  }

  std::vector<IrrepData> irreps;
  std::size_t dim_sq = 0;
  for (auto& c : classes) {
    const auto d = static_cast<std::size_t>(c.basis.cols());
    if (static_cast<std::size_t>(c.copies) != d)
      throw std::runtime_error("irrep multiplicity does not match its dimension");
    dim_sq += d * d;
    std::vector<CMatrix> mats(n);
    for (std::size_t t = 0; t < n; ++t)
      mats[t] = c.basis.adjoint() * regular_apply(g, static_cast<Element>(t), c.basis);
    UnitaryRep rep(group, std::move(mats));
    if (rep.hom_residual() > opts.tol || rep.unitarity_residual() > opts.tol)
      throw std::runtime_error("irrep residual above tolerance");
    auto chi = character_of(rep);
    irreps.push_back({std::move(rep), std::move(chi), c.copies});
  }
  if (dim_sq != n)
    throw std::runtime_error("sum of squared dimensions " +
                             std::to_string(dim_sq) + " != group order " +
                             std::to_string(n));
  for (std::size_t i = 0; i < irreps.size(); ++i)
    for (std::size_t j = i; j < irreps.size(); ++j) {
      const double ip =
          std::abs(character_inner(irreps[i].character, irreps[j].character) -
                   Complex(i == j ? 1.0 : 0.0));
      if (ip > 1e-6) throw std::runtime_error("characters not orthonormal");
    }
  std::stable_sort(irreps.begin(), irreps.end(), irrep_less);
  return irreps;
}

}  // namespace

UnitaryRep::UnitaryRep(GroupPtr group, std::vector<CMatrix> matrices,
                       std::vector<std::size_t> components)
    : group_(std::move(group)),
      matrices_(std::move(matrices)),
      components_(std::move(components)) {
  if (matrices_.size() != group_->order())
    throw std::invalid_argument("representation needs one matrix per element");
  dim_ = static_cast<std::size_t>(matrices_.front().rows());
  if (dim_ == 0) throw std::invalid_argument("representation of dimension 0");
  for (const auto& m : matrices_)
    if (static_cast<std::size_t>(m.rows()) != dim_ ||
        static_cast<std::size_t>(m.cols()) != dim_)
      throw std::invalid_argument("representation matrices must be dim x dim");
  const auto d = static_cast<Eigen::Index>(dim_);
  matrices_[group_->identity()] = CMatrix::Identity(d, d);
  hom_residual_ = max_residual_pairs(*this);
  unitarity_residual_ = stabreg::unitarity_residual(*this);
}

UnitaryRep UnitaryRep::trivial(GroupPtr group, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<CMatrix> mats(group->order(), CMatrix::Identity(d, d));
  return UnitaryRep(std::move(group), std::move(mats));
}

bool UnitaryRep::is_diagonal(double tol) const {
  for (const auto& m : matrices_)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (i != j && std::abs(m(i, j)) > tol) return false;
  return true;
}

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double operator_distance(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("operator_distance needs a square matrix");
  if (m.rows() == 1) return std::abs(m(0, 0) - 1.0);
  return operator_norm(m - CMatrix::Identity(m.rows(), m.cols()));
}

double hom_residual(const UnitaryRep& tau) { return max_residual_pairs(tau); }

double unitarity_residual(const UnitaryRep& tau) {
  double worst = 0;
  const auto d = static_cast<Eigen::Index>(tau.dim());
  for (const auto& m : tau.matrices()) {
    const CMatrix diff = m.adjoint() * m - CMatrix::Identity(d, d);
    if (diff.norm() > worst) worst = std::max(worst, operator_norm(diff));
  }
  return worst;
}

Complex character_inner(std::span<const Complex> chi,
                        std::span<const Complex> psi) {
  if (chi.size() != psi.size())
    throw std::invalid_argument("character length mismatch");
  Complex s = 0;
  for (std::size_t i = 0; i < chi.size(); ++i) s += chi[i] * std::conj(psi[i]);
  return s / static_cast<double>(chi.size());
}

std::vector<Complex> character_of(const UnitaryRep& tau) {
  std::vector<Complex> chi;
  chi.reserve(tau.matrices().size());
  for (const auto& m : tau.matrices()) chi.push_back(m.trace());
  return chi;
}

std::vector<IrrepData> abelian_characters(const GroupPtr& group) {
  const auto& g = *group;
  if (!g.is_abelian())
    throw std::invalid_argument("abelian_characters: group '" +
                                g.descriptor() + "' is not abelian");
  const std::size_t n = g.order();
  const std::size_t e = g.exponent();

  // Characters as exponent vectors: chi(x) = exp(2 pi i c[x] / e), built by
  // extending from H = <g_1, ..., g_j> one generator at a time.
  std::vector<char> in_h(n, 0);
  std::vector<Element> h_elems{g.identity()};
  in_h[g.identity()] = 1;
  std::vector<std::vector<std::size_t>> chars{std::vector<std::size_t>(n, 0)};

  while (h_elems.size() < n) {
    Element gen = 0;
    std::size_t best_order = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (in_h[x]) continue;
      const std::size_t o = g.element_order(static_cast<Element>(x));
      if (o > best_order) {
        best_order = o;
        gen = static_cast<Element>(x);
      }
    }
    // s = least s >= 1 with gen^s in H
    std::size_t s = 1;
    Element pw = gen;
    while (!in_h[pw]) {
      pw = g.mul(pw, gen);
      ++s;
    }
    std::vector<Element> new_elems;
    new_elems.reserve(h_elems.size() * s);
    std::vector<std::vector<std::size_t>> new_chars;
    new_chars.reserve(chars.size() * s);
    for (const auto& c : chars) {
      for (std::size_t t = 0; t < e; ++t) {
        if ((s * t) % e != c[pw] % e) continue;
        std::vector<std::size_t> nc(n, 0);
        Element gj = g.identity();
        for (std::size_t j = 0; j < s; ++j) {
          for (Element hx : h_elems) nc[g.mul(hx, gj)] = (c[hx] + j * t) % e;
          gj = g.mul(gj, gen);
        }
        new_chars.push_back(std::move(nc));
      }
    }
    Element gj = g.identity();
    for (std::size_t j = 0; j < s; ++j) {
      for (Element hx : h_elems) new_elems.push_back(g.mul(hx, gj));
      gj = g.mul(gj, gen);
    }
    for (Element x : new_elems) in_h[x] = 1;
    h_elems = std::move(new_elems);
    chars = std::move(new_chars);
  }

  std::vector<IrrepData> out;
  out.reserve(chars.size());
  for (std::size_t k = 0; k < chars.size(); ++k) {
    std::vector<CMatrix> mats(n, CMatrix(1, 1));
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t c = chars[k][x];
      // Exact values for the real roots of unity.
      Complex v;
      if (c == 0)
        v = 1.0;
      else if (2 * c == e)
        v = -1.0;
      else if (4 * c == e)
        v = Complex(0, 1);
      else if (4 * c == 3 * e)
        v = Complex(0, -1);
      else
        v = std::polar(1.0, kTwoPi * static_cast<double>(c) / static_cast<double>(e));
      mats[x](0, 0) = v;
    }
    UnitaryRep rep(group, std::move(mats));
    auto chi = character_of(rep);
    out.push_back({std::move(rep), std::move(chi), 1});
  }
  return out;
}

std::vector<IrrepData> decompose_regular(const GroupPtr& group,
                                         const DecomposeOptions& opts) {
  if (group->order() > kDecomposeOrderCap)
    throw std::invalid_argument("decompose_regular: order " +
                                std::to_string(group->order()) +
                                " exceeds cap " +
                                std::to_string(kDecomposeOrderCap));
  std::string last_error;
  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    try {
      return decompose_once(
          group, opts, opts.seed + static_cast<std::uint64_t>(attempt) * 7919);
    } catch (const std::runtime_error& e) {
      last_error = e.what();
    }
  }
  throw std::runtime_error("decompose_regular failed after retries: " +
                           last_error);
}

void make_diagonal_friendly(std::vector<IrrepData>& irreps, double diag_tol) {
  for (auto& irrep : irreps) {
    const UnitaryRep& rep = irrep.rep;
    if (rep.dim() == 1) continue;
    auto is_diag = [&](const CMatrix& m) {
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
          if (i != j && std::abs(m(i, j)) > diag_tol) return false;
      return true;
    };
    std::size_t best_count = 0;
    CMatrix best_q;
    for (const auto& m : rep.matrices()) {
      Eigen::ComplexSchur<CMatrix> schur(m);
      const CMatrix& q = schur.matrixU();
      std::size_t count = 0;
      for (const auto& h : rep.matrices())
        if (is_diag(q.adjoint() * h * q)) ++count;
      if (count > best_count) {
        best_count = count;
        best_q = q;
      }
    }
    std::vector<CMatrix> mats;
    mats.reserve(rep.matrices().size());
    for (const auto& h : rep.matrices()) {
      CMatrix t = best_q.adjoint() * h * best_q;
      for (Eigen::Index i = 0; i < t.rows(); ++i)
        for (Eigen::Index j = 0; j < t.cols(); ++j)
          if (i != j && std::abs(t(i, j)) <= 1e-13) t(i, j) = 0;
      mats.push_back(std::move(t));
    }
    irrep.rep = UnitaryRep(rep.group(), std::move(mats), rep.components());
  }
}

std::vector<IrrepData> compute_irreps(const GroupPtr& group,
                                      std::uint64_t seed) {
  if (group->is_abelian()) return abelian_characters(group);
  DecomposeOptions opts;
  opts.seed = seed;
  auto irreps = decompose_regular(group, opts);
  make_diagonal_friendly(irreps);
  return irreps;
}

UnitaryRep direct_sum_hom(std::span<const UnitaryRep> reps) {
  if (reps.empty()) throw std::invalid_argument("direct_sum_hom: no summands");
  const GroupPtr& group = reps.front().group();
  std::size_t dim = 0;
  std::vector<std::size_t> comps;
  for (const auto& r : reps) {
    require_same_group(*group, *r.group());
    dim += r.dim();
    comps.insert(comps.end(), r.components().begin(), r.components().end());
  }
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<CMatrix> mats(group->order(), CMatrix::Zero(d, d));
  for (std::size_t g = 0; g < group->order(); ++g) {
    Eigen::Index off = 0;
    for (const auto& r : reps) {
      const auto rd = static_cast<Eigen::Index>(r.dim());
      mats[g].block(off, off, rd, rd) = r(static_cast<Element>(g));
      off += rd;
    }
  }
  return UnitaryRep(group, std::move(mats), std::move(comps));
}

std::optional<std::size_t> min_nontrivial_dim(
    std::span<const IrrepData> irreps) {
  std::optional<std::size_t> best;
  for (const auto& ir : irreps) {
    const bool constant = std::all_of(
        ir.character.begin(), ir.character.end(),
        [&](const Complex& c) { return std::abs(c - ir.character.front()) < 1e-9; });
    if (constant) continue;
    if (!best || ir.rep.dim() < *best) best = ir.rep.dim();
  }
  return best;
}

std::optional<std::size_t> min_nontrivial_dim(const GroupPtr& group,
                                              std::uint64_t seed) {
  const auto irreps = compute_irreps(group, seed);
  return min_nontrivial_dim(irreps);
}

Subset kernel(const UnitaryRep& tau, double tol) {
  Subset k(tau.group());
  for (std::size_t g = 0; g < tau.group()->order(); ++g)
    if (operator_distance(tau(static_cast<Element>(g))) <= tol)
      k.insert(static_cast<Element>(g));
  return k;
}

std::string format_rep(const UnitaryRep& tau) {
  std::string out = "dim " + std::to_string(tau.dim()) + " order " +
                    std::to_string(tau.group()->order()) + "\n";
  char buf[96];
  for (const auto& m : tau.matrices()) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%s%.17g %.17g", j ? " " : "",
                      m(i, j).real(), m(i, j).imag());
        out += buf;
      }
      out += '\n';
    }
  }
  return out;
}

UnitaryRep parse_rep(GroupPtr group, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string w1, w2;
  std::size_t dim = 0, order = 0;
  if (!(in >> w1 >> dim >> w2 >> order) || w1 != "dim" || w2 != "order")
    throw std::invalid_argument("rep file: expected header 'dim n order m'");
  if (order != group->order())
    throw std::invalid_argument("rep file: order does not match group");
  if (dim == 0) throw std::invalid_argument("rep file: dim must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<CMatrix> mats(order, CMatrix(d, d));
  for (auto& m : mats)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) {
        double re = 0, im = 0;
        if (!(in >> re >> im))
          throw std::invalid_argument("rep file: truncated matrix data");
        m(i, j) = Complex(re, im);
      }
  return UnitaryRep(std::move(group), std::move(mats));
}

}  // namespace stabreg
