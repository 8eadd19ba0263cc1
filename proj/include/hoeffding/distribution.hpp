#pragma once

#include <string>
#include <vector>

#include "hoeffding/lattice.hpp"
#include "hoeffding/types.hpp"

namespace hoeffding {

struct InputSpec {
  std::string name;
  std::vector<std::string> levels;  // ≥ 2, labels unique within an input
};

// Joint law over the full product grid. Weights are row-major with the
// LAST input varying fastest: cell (x_1,...,x_d) has linear index
// ((x_1·m_2 + x_2)·m_3 + ...)·m_d + x_d.
struct JointPmf {
  std::vector<InputSpec> inputs;
  Vector weights;  // length = grid_size()

  int d() const { return static_cast<int>(inputs.size()); }
  Index grid_size() const;
};

Index grid_index(const std::vector<InputSpec>& inputs,
                 const std::vector<int>& coords);
std::vector<int> grid_coords(const std::vector<InputSpec>& inputs, Index cell);

// The positive-probability cells of a validated pmf, in grid order.
// These atoms are the coordinates of the ambient weighted space: every
// function of the inputs is a length-n value vector, and
// ⟨f,g⟩ = Σ_i p_i f_i g_i.
struct SupportAtoms {
  std::vector<InputSpec> inputs;
  std::vector<Index> cells;  // grid indices, ascending
  Eigen::MatrixXi coords;    // n × d level indices
  Vector p;                  // positive, sums to 1 (renormalized)

  int d() const { return static_cast<int>(inputs.size()); }
  int n() const { return static_cast<int>(cells.size()); }

  // Atom index of a grid cell, or -1 when the cell carries no mass.
  int atom_of_cell(const std::vector<int>& cell_coords) const;
};

// The σ-algebra generated by X_A, realized as the partition of the
// support atoms by the value of x_A. Blocks are ordered by first atom
// occurrence, members ascending, so equal partitions compare equal.
struct AtomPartition {
  SubsetMask subset = 0;
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;

  int block_count() const { return static_cast<int>(blocks.size()); }
  bool same_blocks(const AtomPartition& other) const {
    return block_of == other.block_of;
  }
};

// Rejects invariant violations (negative weights, mass not summing to 1
// within 1e-12, an input that is a.s. constant) and extracts the support.
SupportAtoms validate_pmf(const JointPmf& pmf);

AtomPartition partition_by(const SupportAtoms& support, SubsetMask a);

// Finest partition coarser than both arguments: blocks are the connected
// components of the overlap graph (atoms adjacent when they share a block
// in either argument). Its measurable sets are exactly σ_A ∩ σ_B.
AtomPartition sigma_meet(const AtomPartition& pa, const AtomPartition& pb);

struct PairViolation {
  SubsetMask a = 0, b = 0;
};

struct Assumption1Report {
  bool pass = true;
  std::vector<PairViolation> violations;
  bool exhaustive = true;
  std::size_t pairs_checked = 0;
};

// Non-perfect functional dependence: σ_A ∩ σ_B = σ_{A∩B} for the checked
// pairs. All unordered pairs for d ≤ 8 (or with exhaustive=true); for
// larger d a deterministic sample: all pairs with |A|,|B| ≤ 3 plus the
// complement pairs (A, D\A).
Assumption1Report check_assumption1(const SupportAtoms& support,
                                    bool exhaustive = false);

struct NestingReport {
  bool pass = true;
  std::vector<PairViolation> violations;  // (b, a) with b ⊂ a, σ_b = σ_a
};

// σ_∅ ⊂ σ_i for every input and σ_B ⊂ σ_A strictly whenever B ⊂ A.
NestingReport check_strict_nesting(const SupportAtoms& support);

// Marginal law of one input (0-based), over its full level list.
Vector marginal(const JointPmf& pmf, int input);

// Product law with the same univariate marginals.
JointPmf independent_copy(const JointPmf& pmf);

// True iff every atom weight equals the product of its marginal
// probabilities within tol and the support is the full product grid of
// positive-marginal levels.
bool is_product_form(const SupportAtoms& support, double tol = 1e-12);

}  // namespace hoeffding
