#include "hoeffding/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "hoeffding/errors.hpp"

namespace hoeffding {

Index JointPmf::grid_size() const {
  Index n = 1;
  for (const auto& in : inputs) n *= static_cast<Index>(in.levels.size());
  return n;
}

Index grid_index(const std::vector<InputSpec>& inputs,
                 const std::vector<int>& coords) {
  Index ix = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    ix = ix * static_cast<Index>(inputs[i].levels.size()) + coords[i];
  return ix;
}

std::vector<int> grid_coords(const std::vector<InputSpec>& inputs,
                             Index cell) {
  std::vector<int> coords(inputs.size());
  for (std::size_t i = inputs.size(); i-- > 0;) {
    const Index m = static_cast<Index>(inputs[i].levels.size());
    coords[i] = static_cast<int>(cell % m);
    cell /= m;
  }
  return coords;
}

int SupportAtoms::atom_of_cell(const std::vector<int>& cell_coords) const {
  if (static_cast<int>(cell_coords.size()) != d()) return -1;
  for (std::size_t i = 0; i < cell_coords.size(); ++i)
    if (cell_coords[i] < 0 ||
        cell_coords[i] >= static_cast<int>(inputs[i].levels.size()))
      return -1;
  const Index target = grid_index(inputs, cell_coords);
  auto it = std::lower_bound(cells.begin(), cells.end(), target);
  if (it == cells.end() || *it != target) return -1;
  return static_cast<int>(it - cells.begin());
}

SupportAtoms validate_pmf(const JointPmf& pmf) {
  const int d = pmf.d();
  if (d < 1 || d > kMaxInputs)
    fail(errc::bad_input, "input count must be in [1, " +
                              std::to_string(kMaxInputs) + "], got " +
                              std::to_string(d));
  for (const auto& in : pmf.inputs) {
    if (in.levels.size() < 2)
      fail(errc::bad_input,
           "input '" + in.name + "' needs at least 2 levels");
    auto sorted = in.levels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(errc::bad_input, "input '" + in.name + "' has duplicate levels");
  }
  if (pmf.weights.size() != pmf.grid_size())
    fail(errc::bad_input, "weight vector length " +
                              std::to_string(pmf.weights.size()) +
                              " does not match grid size " +
                              std::to_string(pmf.grid_size()));

  for (Index i = 0; i < pmf.weights.size(); ++i) {
    const double w = pmf.weights[i];
    if (!std::isfinite(w))
      fail(errc::bad_input, "non-finite weight at cell " + std::to_string(i));
    if (w < 0.0)
      fail(errc::negative_weight,
           "negative weight " + std::to_string(w) + " at cell " +
               std::to_string(i));
  }
  const double total = pmf.weights.sum();
  if (std::abs(total - 1.0) > 1e-12)
    fail(errc::sum_not_one,
         "weights sum to " + std::to_string(total) + ", expected 1");

  // Each input must attain at least two levels with positive mass.
  for (int i = 0; i < d; ++i) {
    const Vector m = marginal(pmf, i);
    const int attained = static_cast<int>((m.array() > 0.0).count());
    if (attained < 2)
      fail(errc::degenerate_marginal,
           "input '" + pmf.inputs[i].name + "' is almost surely constant");
  }

  SupportAtoms support;
  support.inputs = pmf.inputs;
  for (Index cell = 0; cell < pmf.weights.size(); ++cell)
    if (pmf.weights[cell] > 0.0) support.cells.push_back(cell);
  const int n = static_cast<int>(support.cells.size());
  if (n < 2) fail(errc::bad_input, "support has fewer than 2 atoms");

  support.coords.resize(n, d);
  support.p.resize(n);
  for (int a = 0; a < n; ++a) {
    const auto coords = grid_coords(pmf.inputs, support.cells[a]);
    for (int i = 0; i < d; ++i) support.coords(a, i) = coords[i];
    support.p[a] = pmf.weights[support.cells[a]];
  }
  // Weights passed the 1e-12 gate; renormalize so Σp = 1 to machine.
  support.p /= support.p.sum();
  return support;
}

AtomPartition partition_by(const SupportAtoms& support, SubsetMask a) {
  AtomPartition part;
  part.subset = a;
  part.block_of.assign(support.n(), -1);

  // Key atoms by their grid index restricted to the coordinates in a.
  std::unordered_map<Index, int> block_of_key;
  for (int atom = 0; atom < support.n(); ++atom) {
    Index key = 0;
    for (int i = 0; i < support.d(); ++i) {
      const Index m = static_cast<Index>(support.inputs[i].levels.size());
      const Index c = (a & (1u << i)) ? support.coords(atom, i) : 0;
      key = key * m + c;
    }
    auto [it, inserted] =
        block_of_key.emplace(key, static_cast<int>(part.blocks.size()));
    if (inserted) part.blocks.emplace_back();
    part.blocks[it->second].push_back(atom);
    part.block_of[atom] = it->second;
  }
  return part;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

AtomPartition sigma_meet(const AtomPartition& pa, const AtomPartition& pb) {
  if (pa.block_of.size() != pb.block_of.size())
    fail(errc::mismatched_atoms,
         "sigma_meet: partitions cover different atom sets");
  const int n = static_cast<int>(pa.block_of.size());

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](int x, int y) {
    x = find_root(parent, x);
    y = find_root(parent, y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  for (const auto* part : {&pa, &pb})
    for (const auto& block : part->blocks)
      for (std::size_t j = 1; j < block.size(); ++j)
        unite(block[0], block[j]);

  AtomPartition out;
  out.subset = static_cast<SubsetMask>(pa.subset & pb.subset);
  out.block_of.assign(n, -1);
  std::unordered_map<int, int> block_of_root;
  for (int atom = 0; atom < n; ++atom) {
    const int root = find_root(parent, atom);
    auto [it, inserted] =
        block_of_root.emplace(root, static_cast<int>(out.blocks.size()));
    if (inserted) out.blocks.emplace_back();
    out.blocks[it->second].push_back(atom);
    out.block_of[atom] = it->second;
  }
  return out;
}

namespace {

std::vector<std::pair<SubsetMask, SubsetMask>> assumption1_pairs(
    int d, bool exhaustive) {
  const auto subsets = enumerate_subsets(d);
  std::vector<std::pair<SubsetMask, SubsetMask>> pairs;
  if (d <= 8 || exhaustive) {
    for (std::size_t i = 0; i < subsets.size(); ++i)
      for (std::size_t j = i + 1; j < subsets.size(); ++j)
        pairs.emplace_back(subsets[i], subsets[j]);
    return pairs;
  }
  // Deterministic sample for 9 ≤ d ≤ 12: all pairs of small subsets plus
  // the complement pairs.
  std::vector<SubsetMask> small;
  for (SubsetMask s : subsets)
    if (cardinality(s) <= 3) small.push_back(s);
  for (std::size_t i = 0; i < small.size(); ++i)
    for (std::size_t j = i + 1; j < small.size(); ++j)
      pairs.emplace_back(small[i], small[j]);
  const SubsetMask full = full_mask(d);
  for (SubsetMask s : subsets) {
    const SubsetMask comp = static_cast<SubsetMask>(full & ~s);
    if (s < comp) pairs.emplace_back(s, comp);
  }
  return pairs;
}

}  // namespace

Assumption1Report check_assumption1(const SupportAtoms& support,
                                    bool exhaustive) {
  const int d = support.d();
  Assumption1Report report;
  report.exhaustive = d <= 8 || exhaustive;

  std::vector<AtomPartition> parts;
  parts.reserve(std::size_t(1) << d);
  for (SubsetMask s = 0; s <= full_mask(d); ++s)
    parts.push_back(partition_by(support, s));

  for (const auto& [a, b] : assumption1_pairs(d, exhaustive)) {
    ++report.pairs_checked;
    const AtomPartition meet = sigma_meet(parts[a], parts[b]);
    if (!meet.same_blocks(parts[a & b])) {
      report.pass = false;
      report.violations.push_back({a, b});
    }
  }
  return report;
}

NestingReport check_strict_nesting(const SupportAtoms& support) {
  const int d = support.d();
  NestingReport report;

  std::vector<int> block_count(std::size_t(1) << d);
  for (SubsetMask s = 0; s <= full_mask(d); ++s)
    block_count[s] = partition_by(support, s).block_count();

  // σ_∅ ⊂ σ_i: every single input attains more than one block.
  for (int i = 0; i < d; ++i) {
    const SubsetMask s = static_cast<SubsetMask>(1u << i);
    if (block_count[s] < 2) {
      report.pass = false;
      report.violations.push_back({0, s});
    }
  }
  // partition_by(a) always refines partition_by(b) for b ⊂ a, so strict
  // containment is exactly a strict block-count increase.
  for (SubsetMask a : enumerate_subsets(d)) {
    for (SubsetMask b : subsets_of(a)) {
      if (b == a || b == 0) continue;
      if (block_count[b] >= block_count[a]) {
        report.pass = false;
        report.violations.push_back({b, a});
      }
    }
  }
  return report;
}

Vector marginal(const JointPmf& pmf, int input) {
  const Index m = static_cast<Index>(pmf.inputs[input].levels.size());
  Vector out = Vector::Zero(m);
  for (Index cell = 0; cell < pmf.weights.size(); ++cell) {
    const auto coords = grid_coords(pmf.inputs, cell);
    out[coords[input]] += pmf.weights[cell];
  }
  return out;
}

JointPmf independent_copy(const JointPmf& pmf) {
  JointPmf out;
  out.inputs = pmf.inputs;
  std::vector<Vector> marginals;
  marginals.reserve(pmf.inputs.size());
  const double total = pmf.weights.sum();
  for (int i = 0; i < pmf.d(); ++i) marginals.push_back(marginal(pmf, i) / total);

  out.weights.resize(pmf.grid_size());
  for (Index cell = 0; cell < out.weights.size(); ++cell) {
    const auto coords = grid_coords(pmf.inputs, cell);
    double w = 1.0;
    for (int i = 0; i < pmf.d(); ++i) w *= marginals[i][coords[i]];
    out.weights[cell] = w;
  }
  return out;
}

bool is_product_form(const SupportAtoms& support, double tol) {
  const int d = support.d();
  std::vector<Vector> marginals(d);
  Index full_support = 1;
  for (int i = 0; i < d; ++i) {
    Vector m = Vector::Zero(static_cast<Index>(support.inputs[i].levels.size()));
    for (int atom = 0; atom < support.n(); ++atom)
      m[support.coords(atom, i)] += support.p[atom];
    marginals[i] = m;
    full_support *= (m.array() > 0.0).count();
  }
  if (full_support != support.n()) return false;
  for (int atom = 0; atom < support.n(); ++atom) {
    double prod = 1.0;
    for (int i = 0; i < d; ++i) prod *= marginals[i][support.coords(atom, i)];
    if (std::abs(prod - support.p[atom]) > tol) return false;
  }
  return true;
}

}  // namespace hoeffding
