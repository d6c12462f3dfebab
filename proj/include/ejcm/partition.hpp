#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ejcm/hamiltonian.hpp"
#include "ejcm/model.hpp"
#include "ejcm/pauli.hpp"

namespace ejcm {

enum class Picture { schrodinger, interaction };
enum class PartitionMethod { structured, greedy };

struct CommutingPartition {
  std::vector<std::vector<std::size_t>> groups;
  PartitionMethod method = PartitionMethod::structured;
  std::optional<std::uint64_t> seed;
  // set when a structured partition was requested for an untagged sum
  bool fell_back = false;

  std::size_t size() const { return groups.size(); }
};

CommutingPartition partition_structured(const TaggedSum& h, const ModelParams& params, Picture picture, double t);
// untagged input: greedy fallback with fell_back = true
CommutingPartition partition_structured(const PauliSum& h, const ModelParams& params, Picture picture, double t);
CommutingPartition partition_greedy(const PauliSum& sum, std::uint64_t seed);
bool verify_partition(const PauliSum& sum, const CommutingPartition& p);
std::vector<std::pair<std::size_t, std::size_t>> frustration_graph(const PauliSum& sum);

}  // namespace ejcm
