#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dspa {

// Block structure of a linear operator, read as a hypergraph: hyperedges are
// row blocks, vertices are column blocks, and hyperedge m joins the vertices
// whose blocks are structurally nonzero in row m.
struct OperatorStructure {
  long hyperedge_count = 0;  // M
  long vertex_count = 0;     // N
  std::vector<long> out_dims;  // per-hyperedge output size
  std::vector<long> in_dims;   // per-vertex input size
  std::vector<std::vector<int>> edges;  // e_m: sorted vertex ids

  // Prefix sums over component counts, built by finalize().
  std::vector<long> out_off;  // size M+1
  std::vector<long> in_off;   // size N+1

  void finalize();
  long total_out() const { return out_off.empty() ? 0 : out_off.back(); }
  long total_in() const { return in_off.empty() ? 0 : in_off.back(); }

  // Throws if a hyperedge is empty or a vertex belongs to no hyperedge.
  void check_valid() const;
};

// All index sets the distributed sampler needs, derived from the structural
// pattern and the two user-supplied owner maps. Immutable after construction.
struct HypergraphPartition {
  int worker_count = 0;  // K
  std::vector<int> vertex_owner;  // n -> k
  std::vector<int> edge_owner;    // m -> k

  // Per worker, all sorted ascending by global id.
  std::vector<std::vector<int>> vertices;     // V_k
  std::vector<std::vector<int>> edges_owned;  // Ebar_k = E_k | E_halo_k
  std::vector<std::vector<int>> edges_local;  // E_k   (no communication)
  std::vector<std::vector<int>> edges_halo;   // E_Rk  (need received vertices)
  std::vector<std::vector<int>> recv_from;    // R_k
  std::vector<std::vector<int>> send_to;      // S_k

  // W_m: workers other than the owner holding vertices of e_m.
  std::vector<std::vector<int>> edge_workers;

  // E_(k,k'): hyperedges owned by k whose evaluation needs vertices from k'.
  std::map<std::pair<int, int>, std::vector<int>> edges_recv;
  // V_(k,k'): vertices of k' that worker k receives (the halo from k').
  std::map<std::pair<int, int>, std::vector<int>> verts_recv;

  const std::vector<int>& edges_recv_from(int k, int kp) const;
  const std::vector<int>& verts_recv_from(int k, int kp) const;

  // Local index maps: on worker k, vertices are numbered own-first (V_k
  // ascending) followed by one halo group per neighbor of R_k in ascending
  // rank, each ascending by global id; hyperedges are numbered E_k then E_Rk.
  std::vector<int> local_vertices(int k) const;   // local slot -> global id
  std::vector<int> local_hyperedges(int k) const; // local row  -> global id
};

// Derives every set above from the nonzero pattern and the owner maps.
// Throws InvalidOwnerMap / EmptyHyperedgeIntersection on bad input.
HypergraphPartition build_partition(const OperatorStructure& structure, int K,
                                    std::vector<int> vertex_owner,
                                    std::vector<int> edge_owner);

// Rechecks every invariant of HypergraphPartition against the structure.
// Violations are returned as data, one message per broken invariant.
std::vector<std::string> validate_partition(const HypergraphPartition& p,
                                            const OperatorStructure& structure);

// Pixel (r, c) of an H x W image goes to worker (r*Kr/H, c*Kc/W), flattened
// row-major; tile sizes differ by at most one row/column.
std::vector<int> grid_partition_2d(long height, long width, int k_rows,
                                   int k_cols);

// JSON round trip for experiment configs: {"K":..,"vertex_owner":[..],
// "edge_owner":[..]} with 0-based worker ranks.
std::string partition_to_json(const HypergraphPartition& p);
HypergraphPartition partition_from_json(const std::string& text,
                                        const OperatorStructure& structure);

}  // namespace dspa
