#pragma once

#include <cstdint>
#include <vector>

#include "dpemp/caf.hpp"
#include "dpemp/mc.hpp"
#include "dpemp/table.hpp"

namespace dpemp {

struct ReproductionOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 10000;
  Execution exec;
};

/// Every bundled reproduction: the result tables (one file each) and all checks
/// against the embedded expected values.
struct ReproductionReport {
  std::vector<ResultTable> tables;
  std::vector<Check> checks;

  bool passed() const;
  ResultTable checks_table() const;
};

ReproductionReport run_reproductions(const ReproductionOptions& options = {});

}  // namespace dpemp
