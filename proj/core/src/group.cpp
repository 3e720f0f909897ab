#include "stabreg/group.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace stabreg {

namespace {

[[noreturn]] void fail_descriptor(std::string_view d, const std::string& why) {
  throw std::invalid_argument("bad group descriptor '" + std::string(d) +
                              "': " + why);
}

std::size_t parse_size(std::string_view s, std::string_view whole) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail_descriptor(whole, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

struct RawTable {
  std::size_t order = 0;
  std::vector<Element> table;
};

RawTable cyclic_table(std::size_t n) {
  RawTable t{n, std::vector<Element>(n * n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      t.table[a * n + b] = static_cast<Element>((a + b) % n);
  return t;
}

// Element index: reflection flag * n + rotation, i.e. s^f r^k.
// r^k s = s r^{-k}, so (s^f1 r^k1)(s^f2 r^k2) = s^(f1+f2) r^(k2 +/- k1).
RawTable dihedral_table(std::size_t n) {
  const std::size_t order = 2 * n;
  RawTable t{order, std::vector<Element>(order * order)};
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t f1 = x / n, k1 = x % n;
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t f2 = y / n, k2 = y % n;
      const std::size_t f = f1 ^ f2;
      const std::size_t k = f2 == 0 ? (k1 + k2) % n : (k2 + n - k1) % n;
      t.table[x * order + y] = static_cast<Element>(f * n + k);
    }
  }
  return t;
}

// Elements 1, -1, i, -i, j, -j, k, -k as integer quaternions.
RawTable quaternion_table() {
  using Q = std::array<int, 4>;
  const std::array<Q, 8> elems = {{{1, 0, 0, 0},
                                   {-1, 0, 0, 0},
                                   {0, 1, 0, 0},
                                   {0, -1, 0, 0},
                                   {0, 0, 1, 0},
                                   {0, 0, -1, 0},
                                   {0, 0, 0, 1},
                                   {0, 0, 0, -1}}};
  auto mul = [](const Q& p, const Q& q) -> Q {
    return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
  };
  RawTable t{8, std::vector<Element>(64)};
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      const Q c = mul(elems[a], elems[b]);
      const auto it = std::find(elems.begin(), elems.end(), c);
      t.table[a * 8 + b] = static_cast<Element>(it - elems.begin());
    }
  return t;
}

bool is_even(const std::vector<int>& perm) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0;
}

// Permutations in lexicographic order (identity first), composed as
// (p*q)(x) = p(q(x)).
RawTable permutation_table(std::size_t n, bool even_only) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (!even_only || is_even(p)) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, Element> index;
  for (std::size_t i = 0; i < perms.size(); ++i)
    index.emplace(perms[i], static_cast<Element>(i));
  const std::size_t order = perms.size();
  RawTable t{order, std::vector<Element>(order * order)};
  std::vector<int> c(n);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      for (std::size_t x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t.table[a * order + b] = index.at(c);
    }
  return t;
}

// Mixed radix, first factor most significant.
RawTable product_table(const std::vector<GroupPtr>& factors) {
  std::size_t order = 1;
  for (const auto& f : factors) order *= f->order();
  RawTable t{order, std::vector<Element>(order * order)};
  std::vector<std::size_t> da(factors.size()), db(factors.size());
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      std::size_t ra = a, rb = b;
      for (std::size_t i = factors.size(); i-- > 0;) {
        da[i] = ra % factors[i]->order();
        db[i] = rb % factors[i]->order();
        ra /= factors[i]->order();
        rb /= factors[i]->order();
      }
      std::size_t c = 0;
      for (std::size_t i = 0; i < factors.size(); ++i)
        c = c * factors[i]->order() +
            factors[i]->mul(static_cast<Element>(da[i]),
                            static_cast<Element>(db[i]));
      t.table[a * order + b] = static_cast<Element>(c);
    }
  }
  return t;
}

GroupPtr build_simple(std::string_view d, const ValidationOptions& opts) {
  const auto colon = d.find(':');
  if (colon == std::string_view::npos) fail_descriptor(d, "missing ':'");
  const std::string_view kind = d.substr(0, colon);
  const std::string_view arg = d.substr(colon + 1);

  RawTable raw;
  if (kind == "zmod") {
    const std::size_t n = parse_size(arg, d);
    if (n < 1 || n > kCatalogOrderCap) fail_descriptor(d, "n out of range");
    raw = cyclic_table(n);
  } else if (kind == "dihedral") {
    const std::size_t n = parse_size(arg, d);
    if (n < 1 || 2 * n > kCatalogOrderCap) fail_descriptor(d, "n out of range");
    raw = dihedral_table(n);
  } else if (kind == "quaternion") {
    if (parse_size(arg, d) != 8) fail_descriptor(d, "only quaternion:8");
    raw = quaternion_table();
  } else if (kind == "sym" || kind == "alt") {
    const std::size_t n = parse_size(arg, d);
    if (n < 1 || n > 5) fail_descriptor(d, "n must be in 1..5");
    raw = permutation_table(n, kind == "alt");
  } else {
    fail_descriptor(d, "unknown kind '" + std::string(kind) + "'");
  }
  return FiniteGroup::from_table(raw.order, std::move(raw.table),
                                 std::string(d), opts);
}

}  // namespace

GroupPtr FiniteGroup::from_table(std::size_t order, std::vector<Element> table,
                                 std::string descriptor,
                                 const ValidationOptions& opts) {
  if (order == 0) throw GroupValidationError("empty group", {});
  if (table.size() != order * order)
    throw GroupValidationError("table size does not match order", {});
  auto at = [&](std::size_t a, std::size_t b) { return table[a * order + b]; };

  std::vector<char> seen(order);
  for (std::size_t a = 0; a < order; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < order; ++b) {
      const Element v = at(a, b);
      if (v >= order || seen[v])
        throw GroupValidationError(
            "not a Latin square, witness row " + std::to_string(a),
            {static_cast<Element>(a), static_cast<Element>(b)});
      seen[v] = 1;
    }
  }
  for (std::size_t b = 0; b < order; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t a = 0; a < order; ++a) {
      const Element v = at(a, b);
      if (seen[v])
        throw GroupValidationError(
            "not a Latin square, witness column " + std::to_string(b),
            {static_cast<Element>(a), static_cast<Element>(b)});
      seen[v] = 1;
    }
  }

  // In a Latin square the only possible identity is the unique e with
  // e*0 = 0.
  std::size_t e = 0;
  while (at(e, 0) != 0) ++e;
  for (std::size_t b = 0; b < order; ++b) {
    if (at(e, b) != b)
      throw GroupValidationError(
          "no identity element",
          {static_cast<Element>(e), static_cast<Element>(b), at(e, b)});
    if (at(b, e) != b)
      throw GroupValidationError(
          "no identity element",
          {static_cast<Element>(b), static_cast<Element>(e), at(b, e)});
  }

  auto check_triple = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (at(at(a, b), c) != at(a, at(b, c)))
      throw GroupValidationError(
          "not associative, witness (" + std::to_string(a) + ", " +
              std::to_string(b) + ", " + std::to_string(c) + ")",
          {static_cast<Element>(a), static_cast<Element>(b),
           static_cast<Element>(c)});
  };
  if (order <= opts.exhaustive_cap) {
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b)
        for (std::size_t c = 0; c < order; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, order - 1);
    for (std::size_t i = 0; i < opts.sampled_triples; ++i)
      check_triple(pick(rng), pick(rng), pick(rng));
  }

  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->order_ = order;
  g->identity_ = static_cast<Element>(e);
  g->inverse_.assign(order, 0);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      if (at(a, b) == e) g->inverse_[a] = static_cast<Element>(b);
  g->abelian_ = true;
  for (std::size_t a = 0; a < order && g->abelian_; ++a)
    for (std::size_t b = a + 1; b < order; ++b)
      if (at(a, b) != at(b, a)) {
        g->abelian_ = false;
        break;
      }
  g->table_ = std::move(table);
  g->descriptor_ = std::move(descriptor);
  return g;
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::size_t FiniteGroup::exponent() const {
  std::size_t e = 1;
  for (std::size_t a = 0; a < order_; ++a)
    e = std::lcm(e, element_order(static_cast<Element>(a)));
  return e;
}

GroupPtr build_group(std::string_view descriptor,
                     const ValidationOptions& opts) {
  if (descriptor.starts_with("file:")) {
    const std::string path(descriptor.substr(5));
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open Cayley table '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_cayley_table(ss.str(), std::string(descriptor), opts);
  }
  if (descriptor.starts_with("product:")) {
    const std::string_view rest = descriptor.substr(8);
    std::vector<GroupPtr> factors;
    std::size_t pos = 0;
    std::size_t order = 1;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const auto part = rest.substr(
          pos, comma == std::string_view::npos ? rest.size() - pos
                                               : comma - pos);
      if (part.starts_with("product:") || part.starts_with("file:"))
        fail_descriptor(descriptor, "nested products are not supported");
      factors.push_back(build_simple(part, opts));
      order *= factors.back()->order();
      if (order > kCatalogOrderCap)
        fail_descriptor(descriptor, "order exceeds catalog cap");
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (factors.empty()) fail_descriptor(descriptor, "no factors");
    RawTable raw = product_table(factors);
    return FiniteGroup::from_table(raw.order, std::move(raw.table),
                                   std::string(descriptor), opts);
  }
  return build_simple(descriptor, opts);
}

GroupPtr from_cayley_table(std::string_view text, std::string descriptor,
                           const ValidationOptions& opts) {
  std::istringstream in{std::string(text)};
  long long order = 0;
  if (!(in >> order) || order <= 0)
    throw GroupValidationError("Cayley table: missing or invalid order", {});
  const auto n = static_cast<std::size_t>(order);
  std::vector<Element> table(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    long long v = 0;
    if (!(in >> v))
      throw GroupValidationError(
          "Cayley table: expected " + std::to_string(n * n) + " entries",
          {static_cast<Element>(i / n), static_cast<Element>(i % n)});
    if (v < 0 || v >= order)
      throw GroupValidationError(
          "not a Latin square, witness row " + std::to_string(i / n),
          {static_cast<Element>(i / n), static_cast<Element>(i % n)});
    table[i] = static_cast<Element>(v);
  }
  std::string trailing;
  if (in >> trailing)
    throw GroupValidationError("Cayley table: trailing data", {});
  return FiniteGroup::from_table(n, std::move(table), std::move(descriptor),
                                 opts);
}

std::string to_cayley_table(const FiniteGroup& g) {
  std::ostringstream out;
  out << g.order() << '\n';
  for (std::size_t a = 0; a < g.order(); ++a) {
    const auto r = g.row(static_cast<Element>(a));
    for (std::size_t b = 0; b < r.size(); ++b) out << (b ? " " : "") << r[b];
    out << '\n';
  }
  return out.str();
}

}  // namespace stabreg
