#pragma once

// Deterministic random corpora of rational affine configurations for the
// order-commutation and lift-relation property tests.  Each configuration is
// built from coordinate-span prototypes (where the wanted hypothesis holds by
// construction) pushed through a random product of integer shears, so the
// emitted equations are generic while the hypothesis is guaranteed.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "corner/fourier_motzkin.hpp"
#include "corner/linalg.hpp"

namespace corner_corpus {

using corner::AffForm;
using corner::Mat;
using corner::Rat;
using corner::Vec;

// one affine subspace given by its equations in a chart with b = 0, m = dim
struct AffineCenter {
  std::vector<AffForm> eqs;
};

struct PairConfig {
  int dim = 0;
  AffineCenter f1, f2;
};

struct TripleConfig {
  int dim = 0;
  AffineCenter f1, f2, f3;
};

namespace detail {

inline Mat identity(int d) {
  Mat m(static_cast<std::size_t>(d), corner::zero_vec(static_cast<std::size_t>(d)));
  for (int i = 0; i < d; ++i)
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rat(1);
  return m;
}

inline Mat matmul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), k = b.size(), p = b[0].size();
  Mat r(n, corner::zero_vec(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (a[i][j] != 0)
        for (std::size_t l = 0; l < p; ++l) r[i][l] += a[i][j] * b[j][l];
  return r;
}

struct Frame {
  Mat t, tinv;  // random unimodular change of coordinates and its inverse
  Vec anchor;   // common base point of the configuration
};

inline Frame random_frame(int d, std::mt19937& rng) {
  std::uniform_int_distribution<int> coord(0, d - 1);
  std::uniform_int_distribution<int> coeff(-2, 2);
  Frame fr{identity(d), identity(d), corner::zero_vec(static_cast<std::size_t>(d))};
  const int shears = 2 * d;
  for (int s = 0; s < shears; ++s) {
    int i = coord(rng), j = coord(rng);
    int lam = coeff(rng);
    if (i == j || lam == 0) continue;
    Mat e = identity(d), einv = identity(d);
    e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rat(lam);
    einv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rat(-lam);
    fr.t = matmul(fr.t, e);
    fr.tinv = matmul(einv, fr.tinv);
  }
  for (auto& x : fr.anchor) x = Rat(coeff(rng));
  return fr;
}

// the affine subspace anchor + shift + T * span{e_i : i in span_idx},
// as equations: row_j(T^-1) (x - q) = 0 for every j outside the span
inline AffineCenter span_center(const Frame& fr, const std::vector<int>& span_idx,
                                const Vec& shift) {
  const int d = static_cast<int>(fr.t.size());
  Vec q = corner::vadd(fr.anchor, shift);
  std::vector<bool> in_span(static_cast<std::size_t>(d), false);
  for (int i : span_idx) in_span[static_cast<std::size_t>(i)] = true;
  AffineCenter c;
  for (int j = 0; j < d; ++j) {
    if (in_span[static_cast<std::size_t>(j)]) continue;
    const Vec& row = fr.tinv[static_cast<std::size_t>(j)];
    c.eqs.push_back({row, -corner::dot(row, q)});
  }
  return c;
}

inline Vec t_column(const Frame& fr, int j) {
  Vec col(fr.t.size(), Rat(0));
  for (std::size_t r = 0; r < fr.t.size(); ++r) col[r] = fr.t[r][static_cast<std::size_t>(j)];
  return col;
}

inline std::vector<int> shuffled_indices(int d, std::mt19937& rng) {
  std::vector<int> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

}  // namespace detail

// F1 strictly inside F2, both proper, through a common point
inline PairConfig nested_pair(int d, std::mt19937& rng) {
  auto fr = detail::random_frame(d, rng);
  auto idx = detail::shuffled_indices(d, rng);
  std::uniform_int_distribution<int> big(1, d - 1);
  const int b = big(rng);
  std::uniform_int_distribution<int> small(0, b - 1);
  const int a = small(rng);
  std::vector<int> span2(idx.begin(), idx.begin() + b);
  std::vector<int> span1(idx.begin(), idx.begin() + a);
  Vec none = corner::zero_vec(static_cast<std::size_t>(d));
  return {d, detail::span_center(fr, span1, none),
          detail::span_center(fr, span2, none)};
}

// transversal pair: the spans jointly exhaust all directions, so the two
// subspaces always meet and their conormals are independent
inline PairConfig transversal_pair(int d, std::mt19937& rng) {
  auto fr = detail::random_frame(d, rng);
  auto idx = detail::shuffled_indices(d, rng);
  // sizes |A| >= 1, |B| >= 1, |C| = d - |A| - |B| >= 0
  std::uniform_int_distribution<int> asz(1, d - 1);
  const int na = asz(rng);
  std::uniform_int_distribution<int> bsz(1, d - na);
  const int nb = bsz(rng);
  std::vector<int> span1, span2;
  for (int i = 0; i < d; ++i) {
    if (i < na) span1.push_back(idx[static_cast<std::size_t>(i)]);
    else if (i < na + nb) span2.push_back(idx[static_cast<std::size_t>(i)]);
    else {
      span1.push_back(idx[static_cast<std::size_t>(i)]);
      span2.push_back(idx[static_cast<std::size_t>(i)]);
    }
  }
  Vec none = corner::zero_vec(static_cast<std::size_t>(d));
  return {d, detail::span_center(fr, span1, none),
          detail::span_center(fr, span2, none)};
}

// parallel-offset pair: one direction is missing from both spans and the
// second subspace is shifted along it, so the two never meet
inline PairConfig disjoint_pair(int d, std::mt19937& rng) {
  auto fr = detail::random_frame(d, rng);
  auto idx = detail::shuffled_indices(d, rng);
  // index 0 of the shuffle is the missing direction carrying the shift
  const int gap = idx[0];
  std::uniform_int_distribution<int> sz(0, d - 2);
  const int na = sz(rng), nb = sz(rng);
  std::vector<int> span1, span2;
  for (int i = 1; i < d; ++i) {
    if (i <= na) span1.push_back(idx[static_cast<std::size_t>(i)]);
    if (i > d - 1 - nb) span2.push_back(idx[static_cast<std::size_t>(i)]);
  }
  std::uniform_int_distribution<int> amt(1, 2);
  Vec shift = corner::vscale(Rat(amt(rng)), detail::t_column(fr, gap));
  Vec none = corner::zero_vec(static_cast<std::size_t>(d));
  return {d, detail::span_center(fr, span1, none),
          detail::span_center(fr, span2, shift)};
}

// triple with F1 cap F2 inside F3 but neither F1 nor F2 inside F3; the
// intended order blows up F3 first (needs d >= 2)
inline TripleConfig pinch_triple(int d, std::mt19937& rng) {
  auto fr = detail::random_frame(d, rng);
  auto idx = detail::shuffled_indices(d, rng);
  std::uniform_int_distribution<int> f3sz(0, d - 2);
  const int f3 = f3sz(rng);
  std::uniform_int_distribution<int> isz(0, f3);
  const int i = isz(rng);
  std::vector<int> span3(idx.begin(), idx.begin() + f3);
  std::vector<int> common(idx.begin(), idx.begin() + i);
  std::vector<int> span1 = common, span2 = common;
  span1.push_back(idx[static_cast<std::size_t>(f3)]);
  span2.push_back(idx[static_cast<std::size_t>(f3 + 1)]);
  Vec none = corner::zero_vec(static_cast<std::size_t>(d));
  return {d, detail::span_center(fr, span1, none),
          detail::span_center(fr, span2, none),
          detail::span_center(fr, span3, none)};
}

// triple with F3 inside F1, F2 not inside F1, and F3 transversal within F1
// to F1 cap F2; the intended order blows up F1 first (needs d >= 3)
inline TripleConfig interior_transversal_triple(int d, std::mt19937& rng) {
  auto fr = detail::random_frame(d, rng);
  auto idx = detail::shuffled_indices(d, rng);
  // sizes: f3 < f1 < d and the middle block f3..f1 joined with an outside
  // direction must leave F2 a proper subspace
  std::uniform_int_distribution<int> f1sz(1, d - 1);
  int f1 = f1sz(rng);
  std::uniform_int_distribution<int> f3sz(0, f1 - 1);
  int f3 = f3sz(rng);
  if (f1 - f3 + 1 > d - 1) f3 = f1 + 1 - (d - 1);  // keep F2 proper
  std::vector<int> span3(idx.begin(), idx.begin() + f3);
  std::vector<int> span1(idx.begin(), idx.begin() + f1);
  // F2 spans the directions of F1 complementary to F3, plus one escape
  std::vector<int> span2(idx.begin() + f3, idx.begin() + f1);
  span2.push_back(idx[static_cast<std::size_t>(f1)]);
  Vec none = corner::zero_vec(static_cast<std::size_t>(d));
  return {d, detail::span_center(fr, span1, none),
          detail::span_center(fr, span2, none),
          detail::span_center(fr, span3, none)};
}

}  // namespace corner_corpus
