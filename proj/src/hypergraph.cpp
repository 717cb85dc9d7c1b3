#include "dspa/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "dspa/errors.hpp"
#include "json.hpp"

namespace dspa {

void OperatorStructure::finalize() {
  out_off.assign(hyperedge_count + 1, 0);
  for (long m = 0; m < hyperedge_count; ++m)
    out_off[m + 1] = out_off[m] + out_dims[m];
  in_off.assign(vertex_count + 1, 0);
  for (long n = 0; n < vertex_count; ++n) in_off[n + 1] = in_off[n] + in_dims[n];
}

void OperatorStructure::check_valid() const {
  std::vector<char> seen(vertex_count, 0);
  for (long m = 0; m < hyperedge_count; ++m) {
    if (edges[m].empty()) {
      throw EmptyHyperedgeIntersection("hyperedge " + std::to_string(m) +
                                       " has no vertices");
    }
    for (int n : edges[m]) {
      if (n < 0 || n >= vertex_count)
        throw DimensionMismatch("hyperedge vertex id out of range");
      seen[n] = 1;
    }
  }
  for (long n = 0; n < vertex_count; ++n) {
    if (!seen[n])
      throw EmptyHyperedgeIntersection("vertex " + std::to_string(n) +
                                       " belongs to no hyperedge");
  }
}

namespace {
const std::vector<int> kEmpty;
}

const std::vector<int>& HypergraphPartition::edges_recv_from(int k,
                                                             int kp) const {
  auto it = edges_recv.find({k, kp});
  return it == edges_recv.end() ? kEmpty : it->second;
}

const std::vector<int>& HypergraphPartition::verts_recv_from(int k,
                                                             int kp) const {
  auto it = verts_recv.find({k, kp});
  return it == verts_recv.end() ? kEmpty : it->second;
}

std::vector<int> HypergraphPartition::local_vertices(int k) const {
  std::vector<int> out = vertices[k];
  for (int kp : recv_from[k]) {
    const auto& halo = verts_recv_from(k, kp);
    out.insert(out.end(), halo.begin(), halo.end());
  }
  return out;
}

std::vector<int> HypergraphPartition::local_hyperedges(int k) const {
  std::vector<int> out = edges_local[k];
  out.insert(out.end(), edges_halo[k].begin(), edges_halo[k].end());
  return out;
}

HypergraphPartition build_partition(const OperatorStructure& s, int K,
                                    std::vector<int> vertex_owner,
                                    std::vector<int> edge_owner) {
  if (K < 1 || static_cast<long>(K) > s.vertex_count)
    throw InvalidOwnerMap("worker count must satisfy 1 <= K <= N");
  if (static_cast<long>(vertex_owner.size()) != s.vertex_count)
    throw InvalidOwnerMap("vertex owner map not total");
  if (static_cast<long>(edge_owner.size()) != s.hyperedge_count)
    throw InvalidOwnerMap("edge owner map not total");
  for (int k : vertex_owner)
    if (k < 0 || k >= K) throw InvalidOwnerMap("vertex owner rank out of range");
  for (int k : edge_owner)
    if (k < 0 || k >= K) throw InvalidOwnerMap("edge owner rank out of range");

  HypergraphPartition p;
  p.worker_count = K;
  p.vertex_owner = std::move(vertex_owner);
  p.edge_owner = std::move(edge_owner);

  p.vertices.resize(K);
  for (long n = 0; n < s.vertex_count; ++n)
    p.vertices[p.vertex_owner[n]].push_back(static_cast<int>(n));

  p.edges_owned.resize(K);
  p.edges_local.resize(K);
  p.edges_halo.resize(K);
  p.edge_workers.resize(s.hyperedge_count);

  for (long m = 0; m < s.hyperedge_count; ++m) {
    const int km = p.edge_owner[m];
    bool touches_owner = false;
    std::set<int> others;
    for (int n : s.edges[m]) {
      const int kn = p.vertex_owner[n];
      if (kn == km)
        touches_owner = true;
      else
        others.insert(kn);
    }
    if (!touches_owner) {
      throw EmptyHyperedgeIntersection(
          "hyperedge " + std::to_string(m) + " shares no vertex with owner " +
          std::to_string(km));
    }
    p.edge_workers[m].assign(others.begin(), others.end());
    p.edges_owned[km].push_back(static_cast<int>(m));
    if (others.empty()) {
      p.edges_local[km].push_back(static_cast<int>(m));
    } else {
      p.edges_halo[km].push_back(static_cast<int>(m));
      for (int kp : others)
        p.edges_recv[{km, kp}].push_back(static_cast<int>(m));
    }
  }

  for (auto& [key, ms] : p.edges_recv) {
    std::set<int> verts;
    for (int m : ms)
      for (int n : s.edges[m])
        if (p.vertex_owner[n] == key.second) verts.insert(n);
    p.verts_recv[key].assign(verts.begin(), verts.end());
  }

  p.recv_from.resize(K);
  p.send_to.resize(K);
  for (const auto& [key, ms] : p.edges_recv) {
    (void)ms;
    p.recv_from[key.first].push_back(key.second);
    p.send_to[key.second].push_back(key.first);
  }
  for (int k = 0; k < K; ++k) {
    std::sort(p.recv_from[k].begin(), p.recv_from[k].end());
    std::sort(p.send_to[k].begin(), p.send_to[k].end());
  }
  return p;
}

namespace {

void note(std::vector<std::string>& out, const std::string& msg) {
  out.push_back(msg);
}

template <typename T>
bool same(const std::vector<T>& a, const std::vector<T>& b) {
  return a == b;
}

}  // namespace

std::vector<std::string> validate_partition(const HypergraphPartition& p,
                                            const OperatorStructure& s) {
  std::vector<std::string> v;
  const int K = p.worker_count;
  if (K < 1) {
    note(v, "worker count < 1");
    return v;
  }
  if (static_cast<long>(p.vertex_owner.size()) != s.vertex_count ||
      static_cast<long>(p.edge_owner.size()) != s.hyperedge_count) {
    note(v, "owner maps not total");
    return v;
  }

  // V_k / Ebar_k must partition the index ranges and match the owner maps.
  std::vector<long> vert_seen(s.vertex_count, 0);
  for (int k = 0; k < K; ++k)
    for (int n : p.vertices[k]) {
      ++vert_seen[n];
      if (p.vertex_owner[n] != k)
        note(v, "V_k not a partition: vertex " + std::to_string(n) +
                    " listed on worker " + std::to_string(k) +
                    " but owned by " + std::to_string(p.vertex_owner[n]));
    }
  for (long n = 0; n < s.vertex_count; ++n)
    if (vert_seen[n] != 1)
      note(v, "V_k not a partition: vertex " + std::to_string(n) + " appears " +
                  std::to_string(vert_seen[n]) + " times");

  std::vector<long> edge_seen(s.hyperedge_count, 0);
  for (int k = 0; k < K; ++k)
    for (int m : p.edges_owned[k]) {
      ++edge_seen[m];
      if (p.edge_owner[m] != k)
        note(v, "Ebar_k not a partition: hyperedge " + std::to_string(m));
    }
  for (long m = 0; m < s.hyperedge_count; ++m)
    if (edge_seen[m] != 1)
      note(v, "Ebar_k not a partition: hyperedge " + std::to_string(m) +
                  " appears " + std::to_string(edge_seen[m]) + " times");

  // Recompute W_m and the owner-intersection rule from the pattern.
  for (long m = 0; m < s.hyperedge_count; ++m) {
    const int km = p.edge_owner[m];
    bool touches_owner = false;
    std::set<int> others;
    for (int n : s.edges[m]) {
      if (p.vertex_owner[n] == km)
        touches_owner = true;
      else
        others.insert(p.vertex_owner[n]);
    }
    if (!touches_owner)
      note(v, "e_m disjoint from owner block: hyperedge " + std::to_string(m));
    std::vector<int> w(others.begin(), others.end());
    if (!same(w, p.edge_workers[m]))
      note(v, "W_m incorrect for hyperedge " + std::to_string(m));
  }

  for (int k = 0; k < K; ++k) {
    // Ebar_k == E_k (disjoint) E_Rk, with membership decided by W_m.
    std::vector<int> merged = p.edges_local[k];
    merged.insert(merged.end(), p.edges_halo[k].begin(), p.edges_halo[k].end());
    std::sort(merged.begin(), merged.end());
    std::vector<int> owned = p.edges_owned[k];
    std::sort(owned.begin(), owned.end());
    if (!same(merged, owned))
      note(v, "Ebar_k != E_k disjoint-union E_Rk on worker " +
                  std::to_string(k));
    for (int m : p.edges_local[k])
      if (!p.edge_workers[m].empty())
        note(v, "E_k contains overlapping hyperedge " + std::to_string(m));
    for (int m : p.edges_halo[k])
      if (p.edge_workers[m].empty())
        note(v, "E_Rk contains local hyperedge " + std::to_string(m));

    // Send/receive symmetry.
    for (int kp : p.recv_from[k]) {
      const auto& st = p.send_to[kp];
      if (!std::binary_search(st.begin(), st.end(), k))
        note(v, "R/S asymmetry: " + std::to_string(kp) + " in R_" +
                    std::to_string(k) + " but " + std::to_string(k) +
                    " not in S_" + std::to_string(kp));
    }
    for (int kp : p.send_to[k]) {
      const auto& rf = p.recv_from[kp];
      if (!std::binary_search(rf.begin(), rf.end(), k))
        note(v, "R/S asymmetry: " + std::to_string(kp) + " in S_" +
                    std::to_string(k));
    }

    // E_(k,k') and V_(k,k') recomputed from definitions.
    for (int kp : p.recv_from[k]) {
      std::vector<int> ms;
      for (int m : p.edges_owned[k]) {
        const auto& w = p.edge_workers[m];
        if (std::binary_search(w.begin(), w.end(), kp)) ms.push_back(m);
      }
      std::sort(ms.begin(), ms.end());
      std::vector<int> stored = p.edges_recv_from(k, kp);
      std::sort(stored.begin(), stored.end());
      if (!same(ms, stored))
        note(v, "E_(k,k') incorrect for (" + std::to_string(k) + "," +
                    std::to_string(kp) + ")");
      std::set<int> verts;
      for (int m : ms)
        for (int n : s.edges[m])
          if (p.vertex_owner[n] == kp) verts.insert(n);
      std::vector<int> expect(verts.begin(), verts.end());
      if (!same(expect, p.verts_recv_from(k, kp)))
        note(v, "V_(k,k') incorrect for (" + std::to_string(k) + "," +
                    std::to_string(kp) + ")");
    }

    // Local maps must be bijections: map then invert is the identity.
    const auto lv = p.local_vertices(k);
    std::unordered_map<int, int> inv;
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (!inv.emplace(lv[i], static_cast<int>(i)).second)
        note(v, "local vertex map not injective on worker " +
                    std::to_string(k));
    }
    for (std::size_t i = 0; i < lv.size(); ++i)
      if (inv[lv[i]] != static_cast<int>(i))
        note(v, "local vertex map round trip failed on worker " +
                    std::to_string(k));
  }
  return v;
}

std::vector<int> grid_partition_2d(long height, long width, int k_rows,
                                   int k_cols) {
  if (k_rows < 1 || k_cols < 1 || k_rows > height || k_cols > width)
    throw InvalidOwnerMap("worker grid larger than image");
  std::vector<int> owner(height * width);
  for (long r = 0; r < height; ++r) {
    const long tr = r * k_rows / height;
    for (long c = 0; c < width; ++c) {
      const long tc = c * k_cols / width;
      owner[r * width + c] = static_cast<int>(tr * k_cols + tc);
    }
  }
  return owner;
}

std::string partition_to_json(const HypergraphPartition& p) {
  nlohmann::json j;
  j["K"] = p.worker_count;
  j["vertex_owner"] = p.vertex_owner;
  j["edge_owner"] = p.edge_owner;
  return j.dump();
}

HypergraphPartition partition_from_json(const std::string& text,
                                        const OperatorStructure& structure) {
  nlohmann::json j = nlohmann::json::parse(text);
  return build_partition(structure, j.at("K").get<int>(),
                         j.at("vertex_owner").get<std::vector<int>>(),
                         j.at("edge_owner").get<std::vector<int>>());
}

}  // namespace dspa
