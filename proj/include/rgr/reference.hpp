#pragma once

#include "rgr/refine.hpp"

namespace rgr::reference {

// Serial reference for grow_regions: the same greedy pop/push process driven by
// an O(n) linear scan for the minimum instead of a heap. Slow, but independent
// of the priority-queue code path; tests and the perf comparison use it.
ClusterMap grow_regions(const LabImage& lab, const RegionPartition& p,
                        const std::vector<Seed>& seeds, const RefineConfig& cfg);

}  // namespace rgr::reference
