#include "corner/poly.hpp"

#include <sstream>

#include "corner/errors.hpp"

namespace corner {

namespace {
void put(LaurentPoly& p, const ExpVec& e, const Rat& c) {
  if (c == 0) return;
  auto it = p.terms.find(e);
  if (it == p.terms.end()) {
    p.terms.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) p.terms.erase(it);
  }
}
}  // namespace

bool LaurentPoly::is_constant() const {
  if (terms.empty()) return true;
  if (terms.size() > 1) return false;
  const auto& e = terms.begin()->first;
  for (int x : e)
    if (x != 0) return false;
  return true;
}

bool LaurentPoly::is_affine() const {
  for (const auto& [e, c] : terms) {
    int total = 0;
    for (int x : e) {
      if (x < 0 || x > 1) return false;
      total += x;
    }
    if (total > 1) return false;
  }
  return true;
}

bool LaurentPoly::is_polynomial() const {
  for (const auto& [e, c] : terms)
    for (int x : e)
      if (x < 0) return false;
  return true;
}

Rat LaurentPoly::constant_value() const {
  if (terms.empty()) return Rat(0);
  return terms.begin()->second;
}

std::string LaurentPoly::str(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    Rat a = abs(c);
    bool has_var = false;
    for (int x : e)
      if (x != 0) has_var = true;
    if (a != 1 || !has_var) os << rat_str(a);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << (names.size() > i ? names[i] : "v" + std::to_string(i));
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

LaurentPoly poly_zero(std::size_t width) { return {{}, width}; }

LaurentPoly poly_const(std::size_t width, const Rat& c) {
  LaurentPoly p{{}, width};
  put(p, ExpVec(width, 0), c);
  return p;
}

LaurentPoly poly_coord(std::size_t width, std::size_t i, int power) {
  LaurentPoly p{{}, width};
  ExpVec e(width, 0);
  e[i] = power;
  put(p, e, Rat(1));
  return p;
}

LaurentPoly poly_term(std::size_t width, const Rat& c, const ExpVec& e) {
  LaurentPoly p{{}, width};
  put(p, e, c);
  return p;
}

LaurentPoly poly_from_affine(const AffForm& f) {
  LaurentPoly p{{}, f.lin.size()};
  put(p, ExpVec(f.lin.size(), 0), f.c);
  for (std::size_t i = 0; i < f.lin.size(); ++i) {
    if (f.lin[i] != 0) {
      ExpVec e(f.lin.size(), 0);
      e[i] = 1;
      put(p, e, f.lin[i]);
    }
  }
  return p;
}

LaurentPoly padd(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = a;
  for (const auto& [e, c] : b.terms) put(r, e, c);
  return r;
}

LaurentPoly psub(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = a;
  for (const auto& [e, c] : b.terms) put(r, e, -c);
  return r;
}

LaurentPoly pneg(const LaurentPoly& a) {
  LaurentPoly r{{}, a.width};
  for (const auto& [e, c] : a.terms) r.terms.emplace(e, -c);
  return r;
}

LaurentPoly pscale(const Rat& s, const LaurentPoly& a) {
  LaurentPoly r{{}, a.width};
  if (s == 0) return r;
  for (const auto& [e, c] : a.terms) r.terms.emplace(e, s * c);
  return r;
}

LaurentPoly pmul(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r{{}, a.width};
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      ExpVec e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      put(r, e, ca * cb);
    }
  }
  return r;
}

LaurentPoly ppow(const LaurentPoly& a, int n) {
  if (n == 0) return poly_const(a.width, Rat(1));
  if (n < 0) {
    if (!a.is_monomial())
      throw UnsupportedComposition("negative power of a non-monomial");
    const auto& [e, c] = *a.terms.begin();
    ExpVec inv(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i];
    LaurentPoly base = poly_term(a.width, Rat(1) / c, inv);
    return ppow(base, -n);
  }
  LaurentPoly r = poly_const(a.width, Rat(1));
  LaurentPoly base = a;
  for (int k = n; k > 0; k >>= 1) {
    if (k & 1) r = pmul(r, base);
    base = (k > 1) ? pmul(base, base) : base;
  }
  return r;
}

LaurentPoly substitute(const LaurentPoly& a,
                       const std::vector<LaurentPoly>& vals) {
  if (vals.size() != a.width)
    throw DomainError("substitute: wrong number of values");
  std::size_t w = vals.empty() ? 0 : vals[0].width;
  LaurentPoly r = poly_zero(w);
  for (const auto& [e, c] : a.terms) {
    LaurentPoly t = poly_const(w, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (vals[i].is_zero()) {
        if (e[i] < 0) throw UnsupportedComposition("division by zero value");
        t = poly_zero(w);
        break;
      }
      t = pmul(t, ppow(vals[i], e[i]));
    }
    r = padd(r, t);
  }
  return r;
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a,
                                        const LaurentPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return poly_zero(a.width);
  // factor monomial content so both become true polynomials
  const std::size_t w = a.width;
  ExpVec sa(w, 0), sb(w, 0);
  auto content = [&](const LaurentPoly& p, ExpVec& s) {
    bool first = true;
    for (const auto& [e, c] : p.terms) {
      for (std::size_t i = 0; i < w; ++i)
        s[i] = first ? e[i] : std::min(s[i], e[i]);
      first = false;
    }
  };
  content(a, sa);
  content(b, sb);
  auto shift = [&](const LaurentPoly& p, const ExpVec& s) {
    LaurentPoly r{{}, w};
    for (const auto& [e, c] : p.terms) {
      ExpVec e2(w);
      for (std::size_t i = 0; i < w; ++i) e2[i] = e[i] - s[i];
      r.terms.emplace(e2, c);
    }
    return r;
  };
  LaurentPoly ra = shift(a, sa), rb = shift(b, sb);
  // long division, leading term in lex order
  LaurentPoly q = poly_zero(w);
  while (!ra.is_zero()) {
    // copy the leading term: ra is replaced before the progress check reads it
    const ExpVec le = ra.terms.rbegin()->first;
    const Rat lc = ra.terms.rbegin()->second;
    const auto& [de, dc] = *rb.terms.rbegin();
    ExpVec qe(w);
    for (std::size_t i = 0; i < w; ++i) {
      qe[i] = le[i] - de[i];
      if (qe[i] < 0) return std::nullopt;
    }
    LaurentPoly qt = poly_term(w, lc / dc, qe);
    q = padd(q, qt);
    ra = psub(ra, pmul(qt, rb));
    if (!ra.is_zero() && ra.terms.rbegin()->first >= le) return std::nullopt;
  }
  // reapply content difference
  ExpVec sq(w);
  for (std::size_t i = 0; i < w; ++i) sq[i] = sa[i] - sb[i];
  return pmul(q, poly_term(w, Rat(1), sq));
}

LaurentPoly pderiv(const LaurentPoly& a, std::size_t var) {
  LaurentPoly r{{}, a.width};
  for (const auto& [e, c] : a.terms) {
    if (e[var] == 0) continue;
    ExpVec e2 = e;
    e2[var] -= 1;
    put(r, e2, c * e[var]);
  }
  return r;
}

int min_exponent(const LaurentPoly& a, std::size_t var) {
  if (a.is_zero()) return 0;
  int mn = a.terms.begin()->first[var];
  for (const auto& [e, c] : a.terms) mn = std::min(mn, e[var]);
  return mn;
}

LaurentPoly shift_var(const LaurentPoly& a, std::size_t var, int k) {
  LaurentPoly r{{}, a.width};
  for (const auto& [e, c] : a.terms) {
    ExpVec e2 = e;
    e2[var] -= k;
    r.terms.emplace(e2, c);
  }
  return r;
}

AffForm poly_to_affine(const LaurentPoly& a) {
  if (!a.is_affine()) throw DomainError("poly is not affine");
  AffForm f = aff_zero(a.width);
  for (const auto& [e, c] : a.terms) {
    bool constant = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 1) {
        f.lin[i] += c;
        constant = false;
        break;
      }
    }
    if (constant) f.c += c;
  }
  return f;
}

Rat peval(const LaurentPoly& a, const Vec& x) {
  Rat r(0);
  for (const auto& [e, c] : a.terms) {
    Rat t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0) throw DomainError("eval of negative exponent");
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    }
    r += t;
  }
  return r;
}

}  // namespace corner
