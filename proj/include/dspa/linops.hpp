#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dspa/hypergraph.hpp"

namespace dspa {

enum class OperatorKind {
  generic,
  convolution_normalized,  // nonnegative kernel with unit sum
  gradient_2d,
};

// Block-sparse linear map stored as CSR over dense blocks. The structural
// pattern doubles as the hypergraph of the partition machinery. Blocks may
// hold zero values (the 2D gradient keeps its trailing-boundary rows), the
// pattern is what matters.
class BlockSparseOperator {
 public:
  OperatorStructure structure;
  OperatorKind kind = OperatorKind::generic;

  std::vector<std::size_t> row_ptr;   // size M+1
  std::vector<int> col;               // vertex id per entry, ascending per row
  std::vector<std::size_t> val_off;   // start of each block in values
  std::vector<double> values;         // row-major out_dims[m] x in_dims[n]

  long output_size() const { return structure.total_out(); }
  long input_size() const { return structure.total_in(); }

  // v_m = sum over n in e_m of D_{m,n} x_n, rows ascending, columns ascending.
  void apply(std::span<const double> x, std::span<double> out) const;

  // Exact adjoint of apply; per input component the contributions accumulate
  // in ascending hyperedge order.
  void apply_adjoint(std::span<const double> d, std::span<double> out) const;

  const double* block(std::size_t entry) const { return values.data() + val_off[entry]; }

  static BlockSparseOperator identity(long n);
  // Triplet list {m, n, block: [[..],[..]]} as JSON.
  static BlockSparseOperator from_json(const std::string& text);
};

struct Kernel2D {
  long rows = 0, cols = 0;  // odd
  std::vector<double> values;  // row-major
  double at(long r, long c) const { return values[r * cols + c]; }
};

// Plain-text matrix file: one kernel row per line, space-separated decimals.
Kernel2D load_kernel_text(const std::string& path);
Kernel2D gaussian_kernel(long rows, long cols, double sigma);  // normalized

// Zero-padded "same" 2D convolution (output size = input size). A delta image
// reproduces the kernel, truncated at the image border.
BlockSparseOperator make_conv2d(const Kernel2D& kernel, long height, long width);

// Forward differences, two components per pixel (vertical then horizontal),
// zero rows at the trailing boundary.
BlockSparseOperator make_grad2d(long height, long width);

// Power-iteration upper bound on ||D||^2, inflated by 5%; capped at 8 for the
// 2D gradient and at 1 for normalized nonnegative convolution kernels.
double operator_norm_sq(const BlockSparseOperator& op, int iters);

// One worker's compiled slice of an operator under a partition. Rows follow
// the local hyperedge order (E_k ascending then E_Rk ascending); the vertex
// address space is the worker layout's (own components, then one halo group
// per R_k neighbor). Shared by the serial oracle and the SPMD workers so both
// execute identical floating-point sequences.
class LocalOperatorPlan {
 public:
  LocalOperatorPlan() = default;
  // halo_base[kp] = component offset of neighbor kp's halo group; own
  // components occupy [0, own_comps).
  LocalOperatorPlan(const BlockSparseOperator& op,
                    const HypergraphPartition& part, int worker,
                    const std::map<int, long>& halo_base,
                    const std::map<int, long>& halo_vertex_base);

  int worker() const { return worker_; }
  long row_comps() const { return row_comps_; }
  const std::vector<int>& rows() const { return rows_global_; }
  const std::vector<long>& row_comp_offsets() const { return row_off_; }
  const std::vector<long>& row_comp_global() const { return row_goff_; }

  // v_k = local rows applied to the worker-local vertex vector.
  void apply_local(std::span<const double> x_local, std::span<double> v) const;

  // Own-column adjoint contributions accumulate into `own` (size = worker's
  // own components); foreign columns accumulate into the per-neighbor partial
  // buffers (indexed by position in R_k, laid out like that neighbor's halo).
  void adjoint_local(std::span<const double> d, std::span<double> own,
                     std::span<std::vector<double>> partials) const;

 private:
  struct Entry {
    long x_off;        // offset into worker-local vertex components
    std::size_t val;   // offset into op values
    int nr, nc;        // block shape
    int partial;       // -1: own column; else index into R_k partial buffers
    long partial_off;  // offset within that partial buffer
  };
  int worker_ = -1;
  long row_comps_ = 0;
  std::vector<int> rows_global_;
  std::vector<long> row_off_;   // local component offset per row (+ total)
  std::vector<long> row_goff_;  // global component offset per row
  std::vector<std::size_t> entry_ptr_;
  std::vector<Entry> entries_;
  const double* values_ = nullptr;
};

// Test-facing wrappers over LocalOperatorPlan.
//
// apply_local: x_halo maps neighbor rank -> values of V_(k,k') in ascending
// global order; throws MissingHalo when a needed neighbor is absent.
std::vector<double> apply_local(const BlockSparseOperator& op,
                                const HypergraphPartition& part, int worker,
                                std::span<const double> x_own,
                                const std::map<int, std::vector<double>>& x_halo);

struct AdjointLocalResult {
  std::vector<double> own;                        // over V_k components
  std::map<int, std::vector<double>> outgoing;    // per R_k neighbor
};
AdjointLocalResult adjoint_local(const BlockSparseOperator& op,
                                 const HypergraphPartition& part, int worker,
                                 std::span<const double> d_local);

}  // namespace dspa
