#include "catq/slice.hpp"

#include <string>

namespace catq {

FamilyOver make_family(Context base, Context total, SetMap display) {
  if (display.from != total || display.to != base)
    throw ContextMismatch("family: display map must run from the total context to the base");
  return FamilyOver{std::move(base), std::move(total), std::move(display)};
}

std::vector<int> fiber_indices(const FamilyOver& fam, int base_index) {
  if (base_index < 0 || base_index >= fam.base.size())
    throw MalformedInput("fiber request outside the base context");
  std::vector<int> v;
  for (int i = 0; i < fam.total.size(); ++i)
    if (fam.display.apply_index(i) == base_index) v.push_back(i);
  return v;
}

// ---------------------------------------------------------------------------
// Functors along f
// ---------------------------------------------------------------------------

namespace {

void require_base_map(const SetMap& f, const FamilyOver& fam, bool fam_over_target,
                      const char* what) {
  const Context& want = fam_over_target ? f.to : f.from;
  if (fam.base != want)
    throw ContextMismatch(std::string(what) + ": family is not over the expected context");
}

}  // namespace

FamilyOver pullback_family(const SetMap& f, const FamilyOver& y) {
  require_base_map(f, y, /*fam_over_target=*/true, "pullback");
  std::vector<Elem> elems;
  std::vector<int> disp;
  for (int d = 0; d < f.from.size(); ++d)
    for (int t = 0; t < y.total.size(); ++t)
      if (f.apply_index(d) == y.display.apply_index(t)) {
        elems.push_back(Elem::pair(f.from.elements[d], y.total.elements[t]));
        disp.push_back(d);
      }
  Context total(std::move(elems));
  SetMap display(total, f.from, std::move(disp));
  return FamilyOver{f.from, std::move(total), std::move(display)};
}

SetMap pullback_second_leg(const SetMap& f, const FamilyOver& y) {
  FamilyOver p = pullback_family(f, y);
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(p.total.size()));
  for (const Elem& e : p.total.elements) tab.push_back(y.total.index_of(e.second()));
  return SetMap(p.total, y.total, std::move(tab));
}

SetMap pullback_on_morphism(const SetMap& f, const FamilyOver& y, const FamilyOver& y2,
                            const SetMap& k) {
  if (k.from != y.total || k.to != y2.total)
    throw ContextMismatch("pullback action: morphism does not run between the families");
  FamilyOver p = pullback_family(f, y);
  FamilyOver p2 = pullback_family(f, y2);
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(p.total.size()));
  for (const Elem& e : p.total.elements)
    tab.push_back(p2.total.index_of(Elem::pair(e.first(), k.apply(e.second()))));
  return SetMap(p.total, p2.total, std::move(tab));
}

FamilyOver sigma_family(const SetMap& f, const FamilyOver& x) {
  require_base_map(f, x, /*fam_over_target=*/false, "dependent sum");
  return FamilyOver{f.to, x.total, compose_maps(f, x.display)};
}

namespace {

/// Sections of x over the listed domain indices, as tuples of (d, chosen)
/// pairs; enumerated with the last domain position fastest.
std::vector<Elem> sections_over(const SetMap& f, const FamilyOver& x,
                                const std::vector<int>& dom) {
  std::vector<std::vector<int>> fibers;
  for (int d : dom) fibers.push_back(fiber_indices(x, d));
  for (const auto& fib : fibers)
    if (fib.empty()) return {};
  std::vector<Elem> out;
  std::vector<std::size_t> pick(fibers.size(), 0);
  while (true) {
    std::vector<Elem> parts;
    for (std::size_t i = 0; i < dom.size(); ++i)
      parts.push_back(Elem::pair(f.from.elements[static_cast<std::size_t>(dom[i])],
                                 x.total.elements[static_cast<std::size_t>(fibers[i][pick[i]])]));
    out.push_back(Elem::tuple(std::move(parts)));
    std::size_t i = fibers.size();
    while (i > 0) {
      --i;
      if (++pick[i] < fibers[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
    if (fibers.empty()) return out;  // single empty section
  }
}

std::vector<int> preimage_indices(const SetMap& f, int y) {
  std::vector<int> v;
  for (int d = 0; d < f.from.size(); ++d)
    if (f.apply_index(d) == y) v.push_back(d);
  return v;
}

}  // namespace

FamilyOver pi_family(const SetMap& f, const FamilyOver& x) {
  require_base_map(f, x, /*fam_over_target=*/false, "dependent product");
  std::vector<Elem> elems;
  std::vector<int> disp;
  for (int y = 0; y < f.to.size(); ++y) {
    for (Elem& s : sections_over(f, x, preimage_indices(f, y))) {
      elems.push_back(Elem::pair(f.to.elements[static_cast<std::size_t>(y)], std::move(s)));
      disp.push_back(y);
    }
  }
  Context total(std::move(elems));
  SetMap display(total, f.to, std::move(disp));
  return FamilyOver{f.to, std::move(total), std::move(display)};
}

SetMap pi_on_morphism(const SetMap& f, const FamilyOver& x, const FamilyOver& x2,
                      const SetMap& h) {
  if (h.from != x.total || h.to != x2.total)
    throw ContextMismatch("dependent-product action: morphism does not run between the families");
  FamilyOver p = pi_family(f, x);
  FamilyOver p2 = pi_family(f, x2);
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(p.total.size()));
  for (const Elem& e : p.total.elements) {
    std::vector<Elem> parts;
    for (const Elem& comp : e.second().parts())
      parts.push_back(Elem::pair(comp.first(), h.apply(comp.second())));
    tab.push_back(p2.total.index_of(Elem::pair(e.first(), Elem::tuple(std::move(parts)))));
  }
  return SetMap(p.total, p2.total, std::move(tab));
}

// ---------------------------------------------------------------------------
// Morphisms over a base; transposes
// ---------------------------------------------------------------------------

bool is_over_base(const FamilyOver& a, const FamilyOver& b, const SetMap& h) {
  if (a.base != b.base || h.from != a.total || h.to != b.total) return false;
  return compose_maps(b.display, h) == a.display;
}

std::vector<SetMap> hom_over(const FamilyOver& a, const FamilyOver& b, long long cap) {
  if (a.base != b.base) throw ContextMismatch("hom over a base: bases differ");
  std::vector<std::vector<int>> cands;
  long long count = 1;
  for (int i = 0; i < a.total.size(); ++i) {
    cands.push_back(fiber_indices(b, a.display.apply_index(i)));
    if (cands.back().empty()) return {};
    count *= static_cast<long long>(cands.back().size());
    if (count > cap) throw SizeCapExceeded("hom enumeration over a base exceeds the cap");
  }
  std::vector<SetMap> out;
  std::vector<std::size_t> pick(cands.size(), 0);
  while (true) {
    std::vector<int> tab;
    tab.reserve(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) tab.push_back(cands[i][pick[i]]);
    out.emplace_back(a.total, b.total, std::move(tab));
    if (cands.empty()) return out;
    std::size_t i = cands.size();
    while (i > 0) {
      --i;
      if (++pick[i] < cands[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
  }
}

SetMap sigma_transpose_forward(const SetMap& f, const FamilyOver& x, const FamilyOver& y,
                               const SetMap& h) {
  FamilyOver sx = sigma_family(f, x);
  if (!is_over_base(sx, y, h))
    throw ContextMismatch("sum transpose: morphism is not over the base");
  FamilyOver py = pullback_family(f, y);
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(x.total.size()));
  for (int i = 0; i < x.total.size(); ++i) {
    const Elem d = f.from.elements[static_cast<std::size_t>(x.display.apply_index(i))];
    tab.push_back(py.total.index_of(Elem::pair(d, h.to.elements[static_cast<std::size_t>(h.apply_index(i))])));
  }
  return SetMap(x.total, py.total, std::move(tab));
}

SetMap sigma_transpose_backward(const SetMap& f, const FamilyOver& x, const FamilyOver& y,
                                const SetMap& k) {
  FamilyOver py = pullback_family(f, y);
  if (!is_over_base(x, py, k))
    throw ContextMismatch("sum transpose: morphism is not over the base");
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(x.total.size()));
  for (int i = 0; i < x.total.size(); ++i)
    tab.push_back(y.total.index_of(k.to.elements[static_cast<std::size_t>(k.apply_index(i))].second()));
  return SetMap(x.total, y.total, std::move(tab));
}

SetMap pi_transpose_forward(const SetMap& f, const FamilyOver& y, const FamilyOver& x,
                            const SetMap& u) {
  FamilyOver py = pullback_family(f, y);
  if (!is_over_base(py, x, u))
    throw ContextMismatch("product transpose: morphism is not over the base");
  FamilyOver px = pi_family(f, x);
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(y.total.size()));
  for (int t = 0; t < y.total.size(); ++t) {
    const int yb = y.display.apply_index(t);
    std::vector<Elem> parts;
    for (int d : preimage_indices(f, yb)) {
      const Elem de = f.from.elements[static_cast<std::size_t>(d)];
      const Elem val = u.apply(Elem::pair(de, y.total.elements[static_cast<std::size_t>(t)]));
      parts.push_back(Elem::pair(de, val));
    }
    tab.push_back(px.total.index_of(
        Elem::pair(y.base.elements[static_cast<std::size_t>(yb)], Elem::tuple(std::move(parts)))));
  }
  return SetMap(y.total, px.total, std::move(tab));
}

SetMap pi_transpose_backward(const SetMap& f, const FamilyOver& y, const FamilyOver& x,
                             const SetMap& v) {
  FamilyOver px = pi_family(f, x);
  if (!is_over_base(y, px, v))
    throw ContextMismatch("product transpose: morphism is not over the base");
  FamilyOver py = pullback_family(f, y);
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(py.total.size()));
  for (const Elem& e : py.total.elements) {
    const Elem section = v.apply(e.second()).second();
    bool found = false;
    for (const Elem& comp : section.parts()) {
      if (comp.first() == e.first()) {
        tab.push_back(x.total.index_of(comp.second()));
        found = true;
        break;
      }
    }
    if (!found)
      throw MalformedInput("product transpose: section lacks a component at '" +
                           e.first().label() + "'");
  }
  return SetMap(py.total, x.total, std::move(tab));
}

// ---------------------------------------------------------------------------
// Adjunction verification on one instance
// ---------------------------------------------------------------------------

LawReport check_slice_adjunctions(const SetMap& f, const FamilyOver& x,
                                  const FamilyOver& y, long long cap) {
  require_base_map(f, x, /*fam_over_target=*/false, "slice adjunctions");
  require_base_map(f, y, /*fam_over_target=*/true, "slice adjunctions");
  LawReport rep;

  FamilyOver sx = sigma_family(f, x);
  FamilyOver py = pullback_family(f, y);
  FamilyOver px = pi_family(f, x);

  const std::vector<SetMap> hom_sx_y = hom_over(sx, y, cap);
  const std::vector<SetMap> hom_x_py = hom_over(x, py, cap);
  const std::vector<SetMap> hom_py_x = hom_over(py, x, cap);
  const std::vector<SetMap> hom_y_px = hom_over(y, px, cap);
  const std::vector<SetMap> endo_x = hom_over(x, x, cap);
  const std::vector<SetMap> endo_y = hom_over(y, y, cap);

  // --- sigma -| pullback -------------------------------------------------
  rep.note_law("sum-bijection");
  rep.note_law("sum-roundtrip");
  ++rep.instances;
  if (hom_sx_y.size() != hom_x_py.size())
    rep.fail("sum-bijection", {static_cast<long long>(hom_sx_y.size()),
                               static_cast<long long>(hom_x_py.size())},
             "hom-set sizes differ");
  std::vector<SetMap> images;
  for (std::size_t i = 0; i < hom_sx_y.size(); ++i) {
    ++rep.instances;
    SetMap k = sigma_transpose_forward(f, x, y, hom_sx_y[i]);
    if (!is_over_base(x, py, k)) {
      rep.fail("sum-bijection", {static_cast<long long>(i)}, "transpose is not over the base");
      continue;
    }
    images.push_back(k);
    if (!(sigma_transpose_backward(f, x, y, k) == hom_sx_y[i]))
      rep.fail("sum-roundtrip", {static_cast<long long>(i)},
               "backward transpose does not invert the forward one");
  }
  for (std::size_t i = 0; i < hom_x_py.size(); ++i) {
    ++rep.instances;
    bool hit = false;
    for (const SetMap& k : images)
      if (k == hom_x_py[i]) { hit = true; break; }
    if (!hit)
      rep.fail("sum-bijection", {static_cast<long long>(i)},
               "a curried morphism is not in the transpose image");
  }

  // Naturality in both variables, pools = endomorphisms over each base.
  rep.note_law("sum-natural-source");
  for (const SetMap& h : endo_x) {
    for (const SetMap& g : hom_sx_y) {
      ++rep.instances;
      // T(g . sigma(h)) == T(g) . h   (sigma acts as the identity on tables)
      SetMap lhs = sigma_transpose_forward(f, x, y, compose_maps(g, h));
      SetMap rhs = compose_maps(sigma_transpose_forward(f, x, y, g), h);
      if (!(lhs == rhs)) {
        rep.fail("sum-natural-source", {}, "transpose does not commute with precomposition");
        break;
      }
    }
    if (rep.failed("sum-natural-source")) break;
  }
  rep.note_law("sum-natural-target");
  for (const SetMap& k : endo_y) {
    SetMap pk = pullback_on_morphism(f, y, y, k);
    for (const SetMap& g : hom_sx_y) {
      ++rep.instances;
      // T(k . g) == pullback(k) . T(g)
      SetMap lhs = sigma_transpose_forward(f, x, y, compose_maps(k, g));
      SetMap rhs = compose_maps(pk, sigma_transpose_forward(f, x, y, g));
      if (!(lhs == rhs)) {
        rep.fail("sum-natural-target", {}, "transpose does not commute with postcomposition");
        break;
      }
    }
    if (rep.failed("sum-natural-target")) break;
  }

  // --- pullback -| pi ------------------------------------------------------
  rep.note_law("product-bijection");
  rep.note_law("product-roundtrip");
  ++rep.instances;
  if (hom_py_x.size() != hom_y_px.size())
    rep.fail("product-bijection", {static_cast<long long>(hom_py_x.size()),
                                   static_cast<long long>(hom_y_px.size())},
             "hom-set sizes differ");
  std::vector<SetMap> pimages;
  for (std::size_t i = 0; i < hom_py_x.size(); ++i) {
    ++rep.instances;
    SetMap v = pi_transpose_forward(f, y, x, hom_py_x[i]);
    if (!is_over_base(y, px, v)) {
      rep.fail("product-bijection", {static_cast<long long>(i)}, "transpose is not over the base");
      continue;
    }
    pimages.push_back(v);
    if (!(pi_transpose_backward(f, y, x, v) == hom_py_x[i]))
      rep.fail("product-roundtrip", {static_cast<long long>(i)},
               "backward transpose does not invert the forward one");
  }
  for (std::size_t i = 0; i < hom_y_px.size(); ++i) {
    ++rep.instances;
    bool hit = false;
    for (const SetMap& v : pimages)
      if (v == hom_y_px[i]) { hit = true; break; }
    if (!hit)
      rep.fail("product-bijection", {static_cast<long long>(i)},
               "a transposed morphism is not in the image");
  }

  rep.note_law("product-natural-source");
  for (const SetMap& k : endo_y) {
    SetMap pk = pullback_on_morphism(f, y, y, k);
    for (const SetMap& u : hom_py_x) {
      ++rep.instances;
      // U(u . pullback(k)) == U(u) . k
      SetMap lhs = pi_transpose_forward(f, y, x, compose_maps(u, pk));
      SetMap rhs = compose_maps(pi_transpose_forward(f, y, x, u), k);
      if (!(lhs == rhs)) {
        rep.fail("product-natural-source", {}, "transpose does not commute with precomposition");
        break;
      }
    }
    if (rep.failed("product-natural-source")) break;
  }
  rep.note_law("product-natural-target");
  for (const SetMap& h : endo_x) {
    SetMap ph = pi_on_morphism(f, x, x, h);
    for (const SetMap& u : hom_py_x) {
      ++rep.instances;
      // U(h . u) == pi(h) . U(u)
      SetMap lhs = pi_transpose_forward(f, y, x, compose_maps(h, u));
      SetMap rhs = compose_maps(ph, pi_transpose_forward(f, y, x, u));
      if (!(lhs == rhs)) {
        rep.fail("product-natural-target", {}, "transpose does not commute with postcomposition");
        break;
      }
    }
    if (rep.failed("product-natural-target")) break;
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Subobjects and quantifiers along a map
// ---------------------------------------------------------------------------

Context omega_context() { return Context::of({"true", "false"}); }

SetMap characteristic(const Subobject& phi) {
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(phi.over.size()));
  for (int i = 0; i < phi.over.size(); ++i) tab.push_back(phi.test(i) ? 0 : 1);
  return SetMap(phi.over, omega_context(), std::move(tab));
}

Subobject subobject_of(const SetMap& chi) {
  if (chi.to != omega_context())
    throw ContextMismatch("classifying map must land in the truth-value context");
  Subobject phi(chi.from);
  for (int i = 0; i < chi.from.size(); ++i)
    if (chi.apply_index(i) == 0) phi.set(i);
  return phi;
}

Subobject exists_f_subobject(const SetMap& f, const Subobject& phi) {
  if (phi.over != f.from) throw ContextMismatch("direct image: subobject is not over the source");
  return Subobject(f.to, image_mask(f, phi.bits));
}

Subobject forall_f_subobject(const SetMap& f, const Subobject& phi) {
  if (phi.over != f.from)
    throw ContextMismatch("universal image: subobject is not over the source");
  Subobject out(f.to, full_mask(f.to.size()));
  for (int d = 0; d < f.from.size(); ++d)
    if (!phi.test(d)) out.bits &= ~(std::uint64_t{1} << f.apply_index(d));
  return out;
}

}  // namespace catq
