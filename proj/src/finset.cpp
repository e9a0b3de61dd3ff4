#include "corner/finset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace corner {

FinSetMap::FinSetMap(int n, int m, std::vector<int> vals)
    : domain_size(n), codomain_size(m), values(std::move(vals)) {
  if (static_cast<int>(values.size()) != n)
    throw std::invalid_argument("value array length != domain size");
  for (int v : values)
    if (v < 1 || v > m) throw std::invalid_argument("value out of codomain");
}

bool FinSetMap::is_injective() const {
  std::set<int> seen(values.begin(), values.end());
  return static_cast<int>(seen.size()) == domain_size;
}

bool FinSetMap::is_surjective() const {
  std::set<int> seen(values.begin(), values.end());
  return static_cast<int>(seen.size()) == codomain_size;
}

bool FinSetMap::is_identity() const {
  if (domain_size != codomain_size) return false;
  for (int j = 1; j <= domain_size; ++j)
    if ((*this)(j) != j) return false;
  return true;
}

FinSetMap identity_map(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return FinSetMap(n, n, std::move(v));
}

FinSetMap compose(const FinSetMap& g, const FinSetMap& f) {
  if (f.codomain_size != g.domain_size)
    throw std::invalid_argument("compose: codomain/domain mismatch");
  std::vector<int> v(f.domain_size);
  for (int j = 1; j <= f.domain_size; ++j) v[j - 1] = g(f(j));
  return FinSetMap(f.domain_size, g.codomain_size, std::move(v));
}

EpiMonoPair epi_mono_factorize(const FinSetMap& f) {
  std::vector<int> image;
  for (int v : f.values)
    if (std::find(image.begin(), image.end(), v) == image.end())
      image.push_back(v);
  std::sort(image.begin(), image.end());
  const int k = static_cast<int>(image.size());
  std::vector<int> e(f.domain_size);
  for (int j = 0; j < f.domain_size; ++j) {
    e[j] = static_cast<int>(std::find(image.begin(), image.end(),
                                      f.values[j]) -
                            image.begin()) +
           1;
  }
  return {FinSetMap(f.domain_size, k, std::move(e)),
          FinSetMap(k, f.codomain_size, std::move(image))};
}

FinSetMap generator_map(const Generator& g) {
  switch (g.kind) {
    case Generator::Swap: {
      auto m = identity_map(g.n);
      std::swap(m.values[g.i - 1], m.values[g.i]);
      return m;
    }
    case Generator::Insert: {
      // J(n-1) -> J(n), j -> j
      std::vector<int> v(g.n - 1);
      std::iota(v.begin(), v.end(), 1);
      return FinSetMap(g.n - 1, g.n, std::move(v));
    }
    case Generator::Collapse: {
      // J(n) -> J(n-1), 1,2 -> 1, j -> j-1
      std::vector<int> v(g.n);
      v[0] = 1;
      for (int j = 2; j <= g.n; ++j) v[j - 1] = j - 1;
      return FinSetMap(g.n, g.n - 1, std::move(v));
    }
  }
  throw std::logic_error("unreachable");
}

FinSetMap compose_word(const std::vector<Generator>& word, int domain_size) {
  FinSetMap acc = identity_map(domain_size);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    acc = compose(generator_map(*it), acc);
  return acc;
}

namespace {

// adjacent-swap word for the permutation p (1-based values); the word,
// applied right-to-left, composes to p
std::vector<Generator> swap_word(std::vector<int> p) {
  const int n = static_cast<int>(p.size());
  std::vector<Generator> word;
  // bubble p to the identity; swapping entries i,i+1 of the value array is
  // precomposition with s_i, so p . s_{i1} ... s_{ik} = id and
  // p = s_{ik} ... s_{i1}: emit in reverse recording order
  for (bool moved = true; moved;) {
    moved = false;
    for (int i = 0; i + 1 < n; ++i) {
      if (p[i] > p[i + 1]) {
        std::swap(p[i], p[i + 1]);
        word.push_back({Generator::Swap, n, i + 1});
        moved = true;
      }
    }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

}  // namespace

std::vector<Generator> generator_decompose(const FinSetMap& f) {
  auto [surj, inj] = epi_mono_factorize(f);
  std::vector<Generator> word;

  // injection part: J(k) -> J(m), strictly increasing.
  // realize as a permutation of J(m) after the chain of point insertions.
  {
    const int k = surj.codomain_size, m = inj.codomain_size;
    std::vector<int> perm(m);
    std::vector<bool> used(m + 1, false);
    for (int j = 1; j <= k; ++j) {
      perm[j - 1] = inj(j);
      used[inj(j)] = true;
    }
    int fill = k;
    for (int v = 1; v <= m; ++v)
      if (!used[v]) perm[fill++] = v;
    auto tau = swap_word(perm);
    word.insert(word.end(), tau.begin(), tau.end());
    for (int n = m; n > k; --n) word.push_back({Generator::Insert, n, 0});
  }

  // surjection part: peel one collapse at a time
  {
    FinSetMap e = surj;
    std::vector<std::vector<Generator>> layers;
    while (e.domain_size > e.codomain_size) {
      const int n = e.domain_size;
      int a = -1, b = -1;
      for (int i = 1; i <= n && a < 0; ++i)
        for (int j = i + 1; j <= n; ++j)
          if (e(i) == e(j)) {
            a = i;
            b = j;
            break;
          }
      // permutation sending a -> 1, b -> 2, rest order-preserving
      std::vector<int> perm(n);
      perm[a - 1] = 1;
      perm[b - 1] = 2;
      int next = 3;
      for (int j = 1; j <= n; ++j)
        if (j != a && j != b) perm[j - 1] = next++;
      // e = e' . delta_n . perm
      std::vector<Generator> layer = swap_word([&] {
        // need word for perm as a map: swap_word sorts p to identity giving
        // p itself; perm here is the map we want
        return perm;
      }());
      layer.insert(layer.begin(), {Generator::Collapse, n, 0});
      layers.push_back(std::move(layer));
      // build e' on J(n-1)
      std::vector<int> v(n - 1);
      std::vector<int> inv(n + 1);
      for (int j = 1; j <= n; ++j) inv[perm[j - 1]] = j;
      v[0] = e(a);
      for (int c = 2; c <= n - 1; ++c) v[c - 1] = e(inv[c + 1]);
      e = FinSetMap(n - 1, e.codomain_size, std::move(v));
    }
    // leftover bijection must be the identity by construction of layers;
    // still, decompose defensively
    if (!e.is_identity()) {
      auto tau = swap_word(e.values);
      word.insert(word.end(), tau.begin(), tau.end());
    }
    // e = e_final . layer_last . ... . layer_first
    for (auto it = layers.rbegin(); it != layers.rend(); ++it)
      word.insert(word.end(), it->begin(), it->end());
  }
  return word;
}

Partition::Partition(int k_, std::vector<std::vector<int>> blocks_)
    : k(k_), blocks(std::move(blocks_)) {
  std::vector<bool> seen(k + 1, false);
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty block");
    std::sort(b.begin(), b.end());
    for (int x : b) {
      if (x < 1 || x > k || seen[x])
        throw std::invalid_argument("blocks must partition 1..k");
      seen[x] = true;
    }
  }
  for (int x = 1; x <= k; ++x)
    if (!seen[x]) throw std::invalid_argument("blocks must cover 1..k");
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
}

bool Partition::operator<(const Partition& o) const {
  if (k != o.k) return k < o.k;
  return blocks < o.blocks;
}

int Partition::block_of(int j) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (int x : blocks[i])
      if (x == j) return static_cast<int>(i);
  throw std::out_of_range("element outside partition ground set");
}

std::string Partition::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) os << "|";
    for (int x : blocks[i]) os << x;
  }
  return os.str();
}

Partition discrete_partition(int k) {
  std::vector<std::vector<int>> b;
  for (int j = 1; j <= k; ++j) b.push_back({j});
  return Partition(k, std::move(b));
}

namespace {
struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
  void unite(int a, int b) { up[find(a)] = find(b); }
};
}  // namespace

Partition partition_join(const Partition& a, const Partition& b) {
  if (a.k != b.k) throw std::invalid_argument("join: ground sets differ");
  UnionFind uf(a.k);
  for (const auto* p : {&a, &b})
    for (const auto& blk : p->blocks)
      for (std::size_t i = 1; i < blk.size(); ++i)
        uf.unite(blk[0] - 1, blk[i] - 1);
  std::map<int, std::vector<int>> groups;
  for (int j = 1; j <= a.k; ++j) groups[uf.find(j - 1)].push_back(j);
  std::vector<std::vector<int>> blocks;
  for (auto& [root, blk] : groups) blocks.push_back(std::move(blk));
  return Partition(a.k, std::move(blocks));
}

bool partition_leq(const Partition& a, const Partition& b) {
  if (a.k != b.k) throw std::invalid_argument("leq: ground sets differ");
  for (const auto& blk : a.blocks) {
    int target = b.block_of(blk[0]);
    for (int x : blk)
      if (b.block_of(x) != target) return false;
  }
  return true;
}

FinSetMap canonical_surjection(const Partition& p) {
  std::vector<int> v(p.k);
  for (int j = 1; j <= p.k; ++j) v[j - 1] = p.block_of(j) + 1;
  return FinSetMap(p.k, p.block_count(), std::move(v));
}

Partition fiber_partition(const FinSetMap& f) {
  std::map<int, std::vector<int>> fibers;
  for (int j = 1; j <= f.domain_size; ++j) fibers[f(j)].push_back(j);
  std::vector<std::vector<int>> blocks;
  for (auto& [v, blk] : fibers) blocks.push_back(std::move(blk));
  return Partition(f.domain_size, std::move(blocks));
}

std::vector<Partition> enumerate_partitions(int k) {
  // restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1])
  std::vector<Partition> out;
  if (k <= 0) return out;
  std::vector<int> a(k, 0);
  while (true) {
    int nblocks = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<std::vector<int>> blocks(nblocks);
    for (int j = 0; j < k; ++j) blocks[a[j]].push_back(j + 1);
    out.push_back(Partition(k, std::move(blocks)));
    int i = k - 1;
    for (; i > 0; --i) {
      int mx = 0;
      for (int j = 0; j < i; ++j) mx = std::max(mx, a[j]);
      if (a[i] <= mx) break;
    }
    if (i == 0) break;
    ++a[i];
    std::fill(a.begin() + i + 1, a.end(), 0);
  }
  return out;
}

}  // namespace corner
