#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "catq/errors.hpp"

namespace catq {

/// An element of a finite context: either a named atom or a tuple of
/// elements (pairs for products and pullbacks, longer tuples for sections).
/// Comparison and equality are structural.
class Elem {
 public:
  Elem() = default;
  explicit Elem(std::string atom) : atom_(std::move(atom)) {}

  static Elem pair(Elem a, Elem b) {
    Elem e;
    e.tuple_ = true;
    e.parts_.push_back(std::move(a));
    e.parts_.push_back(std::move(b));
    return e;
  }

  static Elem tuple(std::vector<Elem> parts) {
    Elem e;
    e.tuple_ = true;
    e.parts_ = std::move(parts);
    return e;
  }

  bool is_atom() const { return !tuple_; }
  const std::string& atom() const { return atom_; }
  const std::vector<Elem>& parts() const { return parts_; }

  const Elem& first() const { return part_at(0); }
  const Elem& second() const { return part_at(1); }

  std::string label() const {
    if (is_atom()) return atom_;
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += parts_[i].label();
    }
    s += ")";
    return s;
  }

  friend bool operator==(const Elem& a, const Elem& b) {
    return a.tuple_ == b.tuple_ && a.atom_ == b.atom_ && a.parts_ == b.parts_;
  }
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }
  friend bool operator<(const Elem& a, const Elem& b) {
    if (a.tuple_ != b.tuple_) return !a.tuple_;
    if (a.parts_.size() != b.parts_.size()) return a.parts_.size() < b.parts_.size();
    if (a.atom_ != b.atom_) return a.atom_ < b.atom_;
    return a.parts_ < b.parts_;
  }

 private:
  const Elem& part_at(std::size_t i) const {
    if (i >= parts_.size()) throw MalformedInput("element '" + label() + "' has no component " + std::to_string(i));
    return parts_[i];
  }
  std::string atom_;
  std::vector<Elem> parts_;
  bool tuple_ = false;
};

/// An ordered finite set of distinct elements.  Order is the declaration
/// order and is significant: predicates are bitmasks over it, and product /
/// pullback constructions enumerate pairs in this order.
struct Context {
  std::vector<Elem> elements;

  Context() = default;
  explicit Context(std::vector<Elem> elems) : elements(std::move(elems)) { validate(); }

  static Context of(std::initializer_list<const char*> atoms) {
    std::vector<Elem> v;
    for (const char* a : atoms) v.emplace_back(std::string(a));
    return Context(std::move(v));
  }
  static Context of_atoms(const std::vector<std::string>& atoms) {
    std::vector<Elem> v;
    for (const auto& a : atoms) v.emplace_back(a);
    return Context(std::move(v));
  }

  int size() const { return static_cast<int>(elements.size()); }

  int index_of(const Elem& e) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == e) return static_cast<int>(i);
    throw MalformedInput("element '" + e.label() + "' is not in the context");
  }

  bool contains(const Elem& e) const {
    for (const auto& x : elements)
      if (x == e) return true;
    return false;
  }

  friend bool operator==(const Context& a, const Context& b) {
    return a.elements == b.elements;
  }
  friend bool operator!=(const Context& a, const Context& b) { return !(a == b); }

  std::string label() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (i) s += ",";
      s += elements[i].label();
    }
    return s + "}";
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = i + 1; j < elements.size(); ++j)
        if (elements[i] == elements[j])
          throw MalformedInput("context has duplicate element '" + elements[i].label() + "'");
  }
};

/// A total map between contexts, tabulated by element index.
struct SetMap {
  Context from;
  Context to;
  std::vector<int> tab;  // tab[i] = index in `to` of the image of from[i]

  SetMap() = default;
  SetMap(Context f, Context t, std::vector<int> m)
      : from(std::move(f)), to(std::move(t)), tab(std::move(m)) {
    if (static_cast<int>(tab.size()) != from.size())
      throw MalformedInput("map table does not cover the source context");
    for (int v : tab)
      if (v < 0 || v >= to.size())
        throw MalformedInput("map table entry out of range");
  }

  static SetMap identity(const Context& c) {
    std::vector<int> t(static_cast<std::size_t>(c.size()));
    for (int i = 0; i < c.size(); ++i) t[static_cast<std::size_t>(i)] = i;
    return SetMap(c, c, std::move(t));
  }

  int apply_index(int i) const {
    if (i < 0 || i >= from.size()) throw MalformedInput("map applied outside its source");
    return tab[static_cast<std::size_t>(i)];
  }

  Elem apply(const Elem& e) const {
    return to.elements[static_cast<std::size_t>(apply_index(from.index_of(e)))];
  }

  friend bool operator==(const SetMap& a, const SetMap& b) {
    return a.from == b.from && a.to == b.to && a.tab == b.tab;
  }
};

/// g after f.
inline SetMap compose_maps(const SetMap& g, const SetMap& f) {
  if (f.to != g.from) throw ContextMismatch("map composition: contexts do not line up");
  std::vector<int> t(static_cast<std::size_t>(f.from.size()));
  for (int i = 0; i < f.from.size(); ++i)
    t[static_cast<std::size_t>(i)] = g.apply_index(f.apply_index(i));
  return SetMap(f.from, g.to, std::move(t));
}

/// A predicate on a context, stored as a bitmask over the element order.
/// Contexts of more than 64 elements are rejected.
struct Predicate {
  Context over;
  std::uint64_t bits = 0;

  Predicate() = default;
  explicit Predicate(Context c, std::uint64_t b = 0) : over(std::move(c)), bits(b) {
    if (over.size() > 64)
      throw SizeCapExceeded("predicate context exceeds 64 elements");
    if (over.size() < 64 && (b >> over.size()) != 0)
      throw MalformedInput("predicate mask has bits outside the context");
  }

  bool test(int i) const { return (bits >> i) & 1u; }
  void set(int i) { bits |= (std::uint64_t{1} << i); }
  bool member(const Elem& e) const { return test(over.index_of(e)); }
  int count() const { return __builtin_popcountll(bits); }

  std::vector<Elem> members() const {
    std::vector<Elem> v;
    for (int i = 0; i < over.size(); ++i)
      if (test(i)) v.push_back(over.elements[static_cast<std::size_t>(i)]);
    return v;
  }

  std::string label() const {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < over.size(); ++i) {
      if (!test(i)) continue;
      if (!first) s += ",";
      first = false;
      s += over.elements[static_cast<std::size_t>(i)].label();
    }
    return s + "}";
  }

  friend bool operator==(const Predicate& a, const Predicate& b) {
    return a.over == b.over && a.bits == b.bits;
  }
  friend bool operator!=(const Predicate& a, const Predicate& b) { return !(a == b); }
};

/// Full predicate on a context.
inline std::uint64_t full_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// Image of S under m, as a mask over m.to.
inline std::uint64_t image_mask(const SetMap& m, std::uint64_t s) {
  std::uint64_t r = 0;
  for (int i = 0; i < m.from.size(); ++i)
    if ((s >> i) & 1u) r |= (std::uint64_t{1} << m.apply_index(i));
  return r;
}

/// Preimage of S under m, as a mask over m.from.
inline std::uint64_t preimage_mask(const SetMap& m, std::uint64_t s) {
  std::uint64_t r = 0;
  for (int i = 0; i < m.from.size(); ++i)
    if ((s >> m.apply_index(i)) & 1u) r |= (std::uint64_t{1} << i);
  return r;
}

}  // namespace catq
