#include "stabreg/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace stabreg {

std::string to_string(BohrKind kind) {
  switch (kind) {
    case BohrKind::unitary: return "unitary";
    case BohrKind::torus: return "torus";
    case BohrKind::nm: return "nm";
  }
  return "unitary";
}

BohrKind bohr_kind_from_string(const std::string& s) {
  if (s == "unitary") return BohrKind::unitary;
  if (s == "torus") return BohrKind::torus;
  if (s == "nm") return BohrKind::nm;
  throw std::invalid_argument("unknown Bohr kind '" + s + "'");
}

std::vector<double> element_distances(const UnitaryRep& tau) {
  std::vector<double> d(tau.group()->order());
  for (std::size_t g = 0; g < d.size(); ++g)
    d[g] = operator_distance(tau(static_cast<Element>(g)));
  return d;
}

Subset ball_from_distances(const GroupPtr& group,
                           const std::vector<double>& distances, double delta,
                           std::vector<Element>* boundary) {
  Subset out(group);
  for (std::size_t g = 0; g < distances.size(); ++g) {
    const double d = distances[g];
    if (std::abs(d - delta) <= kBoundaryTol) {
      if (boundary) boundary->push_back(static_cast<Element>(g));
    } else if (d < delta) {
      out.insert(static_cast<Element>(g));
    }
  }
  return out;
}

BohrSpec bohr_set(const UnitaryRep& tau, double delta) {
  if (!(delta > 0 && delta <= 2))
    throw std::invalid_argument("bohr_set: delta must lie in (0, 2]");
  std::vector<Element> boundary;
  Subset realized =
      ball_from_distances(tau.group(), element_distances(tau), delta, &boundary);
  const BohrKind kind = tau.is_diagonal() ? BohrKind::torus : BohrKind::unitary;
  return BohrSpec{tau,     delta, kind, 1, std::nullopt, std::move(realized),
                  std::move(boundary)};
}

CoverResult greedy_cover(const Subset& b) {
  if (b.empty()) throw std::invalid_argument("greedy_cover: empty set");
  const auto& group = b.group();
  const std::size_t n = group->order();
  std::vector<Subset> translates;
  translates.reserve(n);
  for (std::size_t g = 0; g < n; ++g)
    translates.push_back(translate_set(static_cast<Element>(g), b));

  Subset uncovered = Subset::full(group);
  CoverResult result;
  while (!uncovered.empty()) {
    std::size_t best_gain = 0;
    std::size_t best_g = 0;
    for (std::size_t g = 0; g < n; ++g) {
      const std::size_t gain = translates[g].intersection_size(uncovered);
      if (gain > best_gain) {
        best_gain = gain;
        best_g = g;
      }
    }
    uncovered = uncovered - translates[best_g];
    result.translates.push_back(static_cast<Element>(best_g));
  }
  result.count = result.translates.size();
  return result;
}

std::size_t exact_cover_number(const Subset& b) {
  if (b.empty()) throw std::invalid_argument("exact_cover_number: empty set");
  const auto& group = b.group();
  const std::size_t n = group->order();
  std::vector<Subset> distinct;
  for (std::size_t g = 0; g < n; ++g) {
    Subset t = translate_set(static_cast<Element>(g), b);
    if (std::find(distinct.begin(), distinct.end(), t) == distinct.end())
      distinct.push_back(std::move(t));
  }
  const Subset everything = Subset::full(group);
  const std::size_t upper = greedy_cover(b).count;
  std::vector<std::size_t> pick;
  for (std::size_t k = 1; k < upper; ++k) {
    // Lexicographic k-combinations of the distinct translates.
    pick.resize(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    if (k > distinct.size()) break;
    while (true) {
      Subset u(group);
      for (std::size_t i : pick) u = u | distinct[i];
      if (u == everything) return k;
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == distinct.size() - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return upper;
}

SubgroupTest subgroup_test(const Subset& b) {
  SubgroupTest r;
  const auto& g = *b.group();
  if (!b.contains(g.identity())) return r;
  const auto elems = b.elements();
  for (Element x : elems)
    for (Element y : elems)
      if (!b.contains(g.mul(x, y))) return r;
  r.is_subgroup = true;
  r.is_normal = true;
  for (std::size_t h = 0; h < g.order() && r.is_normal; ++h)
    for (Element x : elems)
      if (!b.contains(g.conj(static_cast<Element>(h), x))) {
        r.is_normal = false;
        break;
      }
  return r;
}

RepImage rep_image(const UnitaryRep& tau, double ident_tol) {
  RepImage img;
  const std::size_t n = tau.group()->order();
  img.index_of.resize(n);
  for (std::size_t g = 0; g < n; ++g) {
    const CMatrix& m = tau(static_cast<Element>(g));
    std::size_t found = img.elements.size();
    for (std::size_t i = 0; i < img.elements.size(); ++i)
      if ((img.elements[i] - m).cwiseAbs().maxCoeff() < ident_tol) {
        found = i;
        break;
      }
    if (found == img.elements.size()) img.elements.push_back(m);
    img.index_of[g] = found;
  }
  return img;
}

namespace {

bool diagonal_within(const CMatrix& m, double tol) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > tol) return false;
  return true;
}

}  // namespace

BohrSpec nm_refine(const UnitaryRep& tau, double delta) {
  if (!(delta > 0 && delta <= 2))
    throw std::invalid_argument("nm_refine: delta must lie in (0, 2]");
  constexpr double kDiagTol = 1e-8;
  const RepImage img = rep_image(tau);
  std::vector<char> in_k(img.elements.size(), 0);
  std::size_t k_size = 0;
  for (std::size_t i = 0; i < img.elements.size(); ++i)
    if (diagonal_within(img.elements[i], kDiagTol)) {
      in_k[i] = 1;
      ++k_size;
    }
  auto lookup = [&](const CMatrix& m) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < img.elements.size(); ++i)
      if ((img.elements[i] - m).cwiseAbs().maxCoeff() < 1e-6) return i;
    return std::nullopt;
  };
  const char* no_refinement = "no diagonal refinement in given basis";
  for (std::size_t i = 0; i < img.elements.size(); ++i) {
    if (!in_k[i]) continue;
    for (std::size_t j = 0; j < img.elements.size(); ++j) {
      if (in_k[j]) {
        const auto p = lookup(img.elements[i] * img.elements[j]);
        if (!p || !in_k[*p]) throw std::runtime_error(no_refinement);
      }
      const CMatrix c =
          img.elements[j] * img.elements[i] * img.elements[j].adjoint();
      const auto q = lookup(c);
      if (!q || !in_k[*q]) throw std::runtime_error(no_refinement);
    }
  }

  const auto& group = tau.group();
  const auto dist = element_distances(tau);
  Subset preimage(group);
  for (std::size_t g = 0; g < group->order(); ++g)
    if (in_k[img.index_of[g]]) preimage.insert(static_cast<Element>(g));
  std::vector<Element> boundary;
  Subset ball = ball_from_distances(group, dist, delta, &boundary);
  return BohrSpec{tau,
                  delta,
                  BohrKind::nm,
                  img.elements.size() / k_size,
                  preimage,
                  ball & preimage,
                  std::move(boundary)};
}

CoverBound cover_bound_check(const BohrSpec& spec) {
  if (spec.kind != BohrKind::nm)
    throw std::invalid_argument("cover_bound_check: spec must be of kind nm");
  const double ell = std::ceil(2.0 * std::numbers::pi / spec.delta);
  const double bound = static_cast<double>(spec.m) *
                       std::pow(ell, static_cast<double>(spec.tau.dim()));
  CoverBound r;
  r.bound = bound >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max()
                            : static_cast<std::uint64_t>(bound);
  r.actual = greedy_cover(spec.realized).count;
  r.ok = r.actual <= r.bound;
  return r;
}

}  // namespace stabreg
