#pragma once

#include <chrono>
#include <memory>

#include "scamgraph/patterns/chains.hpp"
#include "scamgraph/patterns/major_flow.hpp"
#include "scamgraph/patterns/stars.hpp"
#include "scamgraph/rugpull/detector.hpp"

namespace acceptance {

using namespace scamgraph;

class Stopwatch {
public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

/// Snapshot, scan and funding index over one dataset, kept at stable addresses.
struct Analysed {
  std::unique_ptr<DatasetSnapshot> snap;
  std::unique_ptr<ScanResult> sc;
  std::unique_ptr<FundingIndex> fx;
  explicit Analysed(Dataset d, FundingOptions opts = {}) {
    snap = std::make_unique<DatasetSnapshot>(DatasetSnapshot::build(std::move(d)));
    sc = std::make_unique<ScanResult>(scan(*snap));
    fx = std::make_unique<FundingIndex>(*snap, *sc, opts);
  }
};

}  // namespace acceptance
