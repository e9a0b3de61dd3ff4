#include "corner/fourier_motzkin.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace corner {

AffForm aff_add(const AffForm& a, const AffForm& b) {
  return {vadd(a.lin, b.lin), a.c + b.c};
}

AffForm aff_sub(const AffForm& a, const AffForm& b) {
  return {vsub(a.lin, b.lin), a.c - b.c};
}

AffForm aff_scale(const Rat& c, const AffForm& a) {
  return {vscale(c, a.lin), c * a.c};
}

bool aff_is_zero(const AffForm& a) { return a.c == 0 && is_zero(a.lin); }

Rat aff_eval(const AffForm& a, const Vec& x) { return dot(a.lin, x) + a.c; }

namespace {

// scale so the first nonzero entry (lin before c) is +-1; keeps comparisons
// cheap and rows canonical
void normalize(LinCon& r) {
  for (const auto& x : r.f.lin) {
    if (x != 0) {
      Rat s = Rat(1) / abs(x);
      r.f = aff_scale(s, r.f);
      return;
    }
  }
}

struct LinKey {
  Vec lin;
  bool operator<(const LinKey& o) const {
    for (std::size_t i = 0; i < lin.size(); ++i) {
      if (lin[i] != o.lin[i]) return lin[i] < o.lin[i];
    }
    return false;
  }
};

// keep only the tightest constraint per linear part
std::vector<LinCon> dedupe(std::vector<LinCon> rows) {
  std::map<LinKey, LinCon> best;
  for (auto& r : rows) {
    normalize(r);
    LinKey k{r.f.lin};
    auto it = best.find(k);
    if (it == best.end()) {
      best.emplace(std::move(k), std::move(r));
    } else {
      LinCon& b = it->second;
      // lin.x + c >= 0: smaller c is tighter
      if (r.f.c < b.f.c || (r.f.c == b.f.c && r.strict && !b.strict)) b = r;
    }
  }
  std::vector<LinCon> out;
  out.reserve(best.size());
  for (auto& [k, v] : best) out.push_back(std::move(v));
  return out;
}

}  // namespace

bool feasible(const LinSystem& sys) {
  const std::size_t n = sys.n;
  std::vector<LinCon> rows = sys.ineqs;
  std::vector<AffForm> eqs = sys.eqs;
  for (auto& r : rows)
    if (r.f.lin.size() != n) throw std::invalid_argument("bad row width");
  for (auto& e : eqs)
    if (e.lin.size() != n) throw std::invalid_argument("bad eq width");

  std::vector<bool> alive(n, true);

  // substitute equalities away
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    AffForm f = eqs[e];
    std::size_t piv = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (alive[j] && f.lin[j] != 0) {
        piv = j;
        break;
      }
    }
    if (piv == n) {
      if (f.c != 0) return false;
      continue;
    }
    // x_piv = -(rest)/f.lin[piv]
    Rat inv = Rat(-1) / f.lin[piv];
    AffForm sol = aff_scale(inv, f);
    sol.lin[piv] = 0;
    auto subst = [&](AffForm& g) {
      if (g.lin[piv] == 0) return;
      Rat coef = g.lin[piv];
      g.lin[piv] = 0;
      g = aff_add(g, aff_scale(coef, sol));
    };
    for (std::size_t e2 = e + 1; e2 < eqs.size(); ++e2) subst(eqs[e2]);
    for (auto& r : rows) subst(r.f);
    alive[piv] = false;
  }

  rows = dedupe(std::move(rows));

  // eliminate remaining variables
  while (true) {
    // pick a live variable appearing in some row, minimizing pos*neg fill
    std::size_t best = n;
    std::size_t best_cost = static_cast<std::size_t>(-1);
    for (std::size_t j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& r : rows) {
        if (r.f.lin[j] > 0) ++pos;
        else if (r.f.lin[j] < 0) ++neg;
      }
      if (pos + neg == 0) continue;
      std::size_t cost = pos * neg;
      if (cost < best_cost) {
        best_cost = cost;
        best = j;
      }
    }
    if (best == n) break;

    std::vector<LinCon> pos, neg, rest;
    for (auto& r : rows) {
      if (r.f.lin[best] > 0) pos.push_back(std::move(r));
      else if (r.f.lin[best] < 0) neg.push_back(std::move(r));
      else rest.push_back(std::move(r));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        // p: a x + u >= 0 (a>0), q: -b x + v >= 0 (b>0) -> b u + a v >= 0
        Rat a = p.f.lin[best], b = -q.f.lin[best];
        LinCon combo{aff_add(aff_scale(b, p.f), aff_scale(a, q.f)),
                     p.strict || q.strict};
        combo.f.lin[best] = 0;
        rest.push_back(std::move(combo));
      }
    }
    alive[best] = false;
    rows = dedupe(std::move(rest));
    if (rows.size() > 200000)
      throw std::runtime_error("fourier-motzkin blow-up beyond desk scale");
  }

  for (const auto& r : rows) {
    if (r.strict ? !(r.f.c > 0) : !(r.f.c >= 0)) return false;
  }
  return true;
}

}  // namespace corner
