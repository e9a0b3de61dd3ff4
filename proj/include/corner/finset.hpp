#pragma once

// Maps between finite index sets J(n) = {1,...,n} and set partitions.
// These index the factors of generalized products: every structure map of a
// product model is labelled by one of these maps, and multidiagonals by
// partitions.

#include <string>
#include <vector>

#include <stdexcept>

namespace corner {

struct FinSetMap {
  int domain_size = 0;
  int codomain_size = 0;
  std::vector<int> values;  // 1-based, values[i-1] = image of i

  FinSetMap() = default;
  FinSetMap(int n, int m, std::vector<int> vals);

  int operator()(int j) const { return values.at(j - 1); }
  bool operator==(const FinSetMap& o) const = default;

  bool is_injective() const;
  bool is_surjective() const;
  bool is_identity() const;
};

FinSetMap identity_map(int n);
// g after f: domain of f, codomain of g
FinSetMap compose(const FinSetMap& g, const FinSetMap& f);

// f = inj . surj with inj strictly increasing and surj onto J(|image f|)
struct EpiMonoPair {
  FinSetMap surj;
  FinSetMap inj;
};
EpiMonoPair epi_mono_factorize(const FinSetMap& f);

// Generator alphabet: adjacent swaps, the injection J(n-1)->J(n) missing n,
// and the surjection J(n)->J(n-1) collapsing {1,2}.
struct Generator {
  enum Kind { Swap, Insert, Collapse } kind;
  int n;  // size of the generator's domain
  int i;  // swap position (Swap only)
};
FinSetMap generator_map(const Generator& g);
// word applied right-to-left: f = w[0] . w[1] . ... . w[last]
std::vector<Generator> generator_decompose(const FinSetMap& f);
FinSetMap compose_word(const std::vector<Generator>& word, int domain_size);

struct Partition {
  int k = 0;
  std::vector<std::vector<int>> blocks;  // elements sorted; blocks by min

  Partition() = default;
  Partition(int k_, std::vector<std::vector<int>> blocks_);

  bool operator==(const Partition& o) const = default;
  bool operator<(const Partition& o) const;

  int block_count() const { return static_cast<int>(blocks.size()); }
  bool is_discrete() const { return block_count() == k; }
  int block_of(int j) const;  // 0-based block index
  std::string str() const;
};

Partition discrete_partition(int k);
Partition partition_join(const Partition& a, const Partition& b);
bool partition_leq(const Partition& a, const Partition& b);  // a refines b
FinSetMap canonical_surjection(const Partition& p);
Partition fiber_partition(const FinSetMap& f);
std::vector<Partition> enumerate_partitions(int k);  // Bell(k) many

}  // namespace corner
