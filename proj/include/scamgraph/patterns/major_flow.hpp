#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "scamgraph/patterns/funding.hpp"
#include "scamgraph/patterns/stars.hpp"

namespace scamgraph {

enum class FlowRole { input, internal, output };

inline const char* to_string(FlowRole r) {
  switch (r) {
    case FlowRole::input: return "input";
    case FlowRole::internal: return "internal";
    case FlowRole::output: return "output";
  }
  return "input";
}

struct MinimalFlow {
  std::vector<Address> vertices;                // sorted
  std::vector<const NativeTransfer*> edges;     // snapshot order
};

struct MajorFlowResult {
  std::vector<Address> vertices;                // sorted
  std::vector<const NativeTransfer*> edges;     // snapshot order
  std::map<Address, FlowRole> roles;
  std::size_t width = 0;                        // largest contained minimal flow
  std::size_t minimal_flows = 0;
  Wei fund_in;   // T_F of input vertices
  Wei fund_out;  // T_B of output vertices
  Timestamp period_seconds = 0;
  std::size_t scam_count = 0;

  std::size_t size() const { return vertices.size(); }
  double period_days() const { return static_cast<double>(period_seconds) / kDaySeconds; }
};

namespace detail {

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

}  // namespace detail

/// All minimal major flows: closure classes of funding sets under the merging
/// rule, keeping only the classes where every edge lies in both its receiver's
/// T_F and its sender's T_B.
inline std::vector<MinimalFlow> minimal_major_flows(const FundingIndex& fx) {
  const auto& scan = fx.scan();
  std::vector<const FundingEntry*> ents;
  std::map<Address, std::size_t> pos;
  for (const auto& [a, e] : fx.entries()) {
    pos.emplace(a, ents.size());
    ents.push_back(&e);
  }
  // Set ids: 2k = T_F(s_k), 2k+1 = T_B(s_k). A set is usable when present,
  // non-empty and all its counterparties are scammers.
  const std::size_t n = ents.size();
  std::vector<char> usable(2 * n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    auto inside = [&](const std::vector<const NativeTransfer*>& v, bool senders) {
      if (v.empty()) return false;
      for (auto* t : v)
        if (!pos.contains(senders ? t->sender : t->receiver) || !scan.is_scammer(senders ? t->sender : t->receiver)) return false;
      return true;
    };
    if (ents[k]->tf && inside(*ents[k]->tf, true)) usable[2 * k] = 1;
    if (ents[k]->tb && inside(*ents[k]->tb, false)) usable[2 * k + 1] = 1;
  }

  auto in_set = [](const std::optional<std::vector<const NativeTransfer*>>& s, const NativeTransfer* t) {
    return s && std::find(s->begin(), s->end(), t) != s->end();
  };

  detail::DisjointSets ds(2 * n);
  std::vector<char> bad(2 * n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    for (int side = 0; side < 2; ++side) {
      std::size_t id = 2 * k + side;
      if (!usable[id]) continue;
      const auto& set = side == 0 ? *ents[k]->tf : *ents[k]->tb;
      for (auto* t : set) {
        // The edge's other endpoint must list it in its own funding set.
        std::size_t other = side == 0 ? pos.at(t->sender) : pos.at(t->receiver);
        std::size_t other_id = side == 0 ? 2 * other + 1 : 2 * other;
        const auto& other_set = side == 0 ? ents[other]->tb : ents[other]->tf;
        // sets merge only through edges they share
        if (!usable[other_id] || !in_set(other_set, t)) bad[id] = 1;
        else ds.unite(id, other_id);
      }
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t id = 0; id < 2 * n; ++id)
    if (usable[id]) classes[ds.find(id)].push_back(id);

  std::vector<MinimalFlow> out;
  for (auto& [_, ids] : classes) {
    bool ok = true;
    for (auto id : ids) ok = ok && !bad[id];
    if (!ok) continue;
    std::set<const NativeTransfer*> edges;
    std::set<Address> verts;
    for (auto id : ids) {
      const auto& set = id % 2 == 0 ? *ents[id / 2]->tf : *ents[id / 2]->tb;
      for (auto* t : set) {
        edges.insert(t);
        verts.insert(t->sender);
        verts.insert(t->receiver);
      }
    }
    MinimalFlow f;
    f.vertices.assign(verts.begin(), verts.end());
    f.edges.assign(edges.begin(), edges.end());  // pointer order == snapshot order
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const MinimalFlow& a, const MinimalFlow& b) { return a.vertices < b.vertices; });
  return out;
}

/// Maximal major flows: unions of minimal flows connected through shared vertices.
inline std::vector<MajorFlowResult> detect_major_flows(const FundingIndex& fx) {
  auto minimal = minimal_major_flows(fx);
  detail::DisjointSets ds(minimal.size());
  std::map<Address, std::size_t> owner;
  for (std::size_t i = 0; i < minimal.size(); ++i)
    for (const auto& v : minimal[i].vertices) {
      auto [it, fresh] = owner.emplace(v, i);
      if (!fresh) ds.unite(it->second, i);
    }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < minimal.size(); ++i) groups[ds.find(i)].push_back(i);

  std::vector<MajorFlowResult> out;
  for (auto& [_, members] : groups) {
    MajorFlowResult r;
    std::set<Address> verts;
    std::set<const NativeTransfer*> edges;
    for (auto i : members) {
      verts.insert(minimal[i].vertices.begin(), minimal[i].vertices.end());
      edges.insert(minimal[i].edges.begin(), minimal[i].edges.end());
      r.width = std::max(r.width, minimal[i].vertices.size());
    }
    r.minimal_flows = members.size();
    r.vertices.assign(verts.begin(), verts.end());
    r.edges.assign(edges.begin(), edges.end());
    std::set<Address> has_in, has_out;
    for (auto* t : r.edges) {
      has_out.insert(t->sender);
      has_in.insert(t->receiver);
    }
    for (const auto& v : r.vertices) {
      FlowRole role = has_in.contains(v) ? (has_out.contains(v) ? FlowRole::internal : FlowRole::output) : FlowRole::input;
      r.roles.emplace(v, role);
      const FundingEntry* e = fx.find(v);
      if (role == FlowRole::input && e && e->tf)
        for (auto* t : *e->tf) r.fund_in += t->value;
      if (role == FlowRole::output && e && e->tb)
        for (auto* t : *e->tb) r.fund_out += t->value;
    }
    std::tie(r.period_seconds, r.scam_count) = detail::scam_span(fx, r.vertices);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const MajorFlowResult& a, const MajorFlowResult& b) { return a.vertices < b.vertices; });
  return out;
}

}  // namespace scamgraph
