#include "stabreg/subset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stabreg {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void require_same_group(const FiniteGroup& a, const FiniteGroup& b) {
  if (!a.same_as(b))
    throw std::invalid_argument("group mismatch: '" + a.descriptor() +
                                "' vs '" + b.descriptor() + "'");
}

Subset::Subset(GroupPtr group)
    : group_(std::move(group)),
      n_(group_->order()),
      words_((n_ + 63) / 64, 0) {}

Subset::Subset(GroupPtr group, std::span<const Element> members)
    : Subset(std::move(group)) {
  for (Element x : members) insert(x);
}

Subset::Subset(GroupPtr group, std::initializer_list<Element> members)
    : Subset(std::move(group)) {
  for (Element x : members) insert(x);
}

Subset Subset::full(GroupPtr group) {
  Subset s(std::move(group));
  for (std::size_t x = 0; x < s.n_; ++x) s.insert(static_cast<Element>(x));
  return s;
}

Subset Subset::singleton(GroupPtr group, Element x) {
  Subset s(std::move(group));
  s.insert(x);
  return s;
}

void Subset::insert(Element x) {
  if (x >= n_)
    throw std::out_of_range("element " + std::to_string(x) +
                            " outside group of order " + std::to_string(n_));
  words_[x >> 6] |= std::uint64_t{1} << (x & 63);
}

void Subset::erase(Element x) {
  if (x >= n_) return;
  words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
}

std::size_t Subset::size() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<Element> Subset::elements() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      const int b = std::countr_zero(w);
      out.push_back(static_cast<Element>(i * 64 + static_cast<std::size_t>(b)));
      w &= w - 1;
    }
  }
  return out;
}

void Subset::require_same(const Subset& other) const {
  require_same_group(*group_, *other.group_);
}

bool Subset::is_subset_of(const Subset& other) const {
  require_same(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::size_t Subset::intersection_size(const Subset& other) const {
  require_same(other);
  std::size_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  return c;
}

std::size_t Subset::difference_size(const Subset& other) const {
  require_same(other);
  std::size_t c = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(words_[i] & ~other.words_[i]));
  return c;
}

Subset Subset::operator&(const Subset& other) const {
  require_same(other);
  Subset r(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= other.words_[i];
  return r;
}

Subset Subset::operator|(const Subset& other) const {
  require_same(other);
  Subset r(*this);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= other.words_[i];
  return r;
}

Subset Subset::operator-(const Subset& other) const {
  require_same(other);
  Subset r(*this);
  for (std::size_t i = 0; i < words_.size(); ++i)
    r.words_[i] &= ~other.words_[i];
  return r;
}

Subset Subset::complement() const { return full(group_) - *this; }

bool Subset::operator==(const Subset& other) const {
  return group_->same_as(*other.group_) && words_ == other.words_;
}

Subset product_set(const Subset& a, const Subset& b) {
  require_same_group(*a.group(), *b.group());
  const auto& g = *a.group();
  Subset out(a.group());
  const auto bs = b.elements();
  for (Element x : a.elements())
    for (Element y : bs) out.insert(g.mul(x, y));
  return out;
}

Subset inverse_set(const Subset& a) {
  Subset out(a.group());
  for (Element x : a.elements()) out.insert(a.group()->inv(x));
  return out;
}

Subset translate_set(Element g, const Subset& a, Side side) {
  const auto& grp = *a.group();
  Subset out(a.group());
  for (Element x : a.elements())
    out.insert(side == Side::left ? grp.mul(g, x) : grp.mul(x, g));
  return out;
}

Subset conjugate_set(Element g, const Subset& a) {
  Subset out(a.group());
  for (Element x : a.elements()) out.insert(a.group()->conj(g, x));
  return out;
}

GroupFunction::GroupFunction(GroupPtr group, std::vector<double> values,
                             double tolerance)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_->order())
    throw std::invalid_argument("function has " +
                                std::to_string(values_.size()) +
                                " values for a group of order " +
                                std::to_string(group_->order()));
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!(std::abs(values_[i]) <= 1.0 + tolerance))
      throw std::invalid_argument("function value at " + std::to_string(i) +
                                  " outside [-1,1]");
}

GroupFunction GroupFunction::constant(GroupPtr group, double value) {
  const std::size_t n = group->order();
  return GroupFunction(std::move(group), std::vector<double>(n, value));
}

GroupFunction GroupFunction::indicator(const Subset& s) {
  std::vector<double> v(s.universe(), 0.0);
  for (Element x : s.elements()) v[x] = 1.0;
  return GroupFunction(s.group(), std::move(v));
}

double GroupFunction::mean() const noexcept {
  double s = 0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double GroupFunction::min() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double GroupFunction::max() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

Subset parse_subset(GroupPtr group, std::string_view text) {
  Subset s(group);
  std::istringstream in{std::string(text)};
  long long v = 0;
  while (in >> v) {
    if (v < 0 || static_cast<std::size_t>(v) >= group->order())
      throw std::invalid_argument("subset element " + std::to_string(v) +
                                  " out of range");
    s.insert(static_cast<Element>(v));
  }
  if (!in.eof()) throw std::invalid_argument("subset file: non-integer token");
  return s;
}

std::string format_subset(const Subset& s) {
  std::string out;
  for (Element x : s.elements()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x);
  }
  out += '\n';
  return out;
}

Subset load_subset(GroupPtr group, const std::string& path) {
  return parse_subset(std::move(group), read_file(path));
}

GroupFunction parse_function(GroupPtr group, std::string_view text) {
  std::vector<double> values;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::istringstream ls(line);
    double v = 0;
    std::string rest;
    if (!(ls >> v) || (ls >> rest))
      throw std::invalid_argument("function file: bad line '" + line + "'");
    values.push_back(v);
  }
  return GroupFunction(std::move(group), std::move(values));
}

std::string format_function(const GroupFunction& f) {
  std::string out;
  char buf[64];
  for (double v : f.values()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out += buf;
  }
  return out;
}

GroupFunction load_function(GroupPtr group, const std::string& path) {
  return parse_function(std::move(group), read_file(path));
}

}  // namespace stabreg
