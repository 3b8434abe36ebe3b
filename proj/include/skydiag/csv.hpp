#pragma once

#include <string>
#include <vector>

#include "skydiag/types.hpp"

namespace skydiag {

// Canonical dataset file: header "id,x1,...,xd", integer fields.
void write_dataset_csv(const Dataset& ds, const std::string& path);
Dataset read_dataset_csv(const std::string& path);

// Ingests selected named columns of an arbitrary numeric CSV as one
// coordinate each. max_is_better negates that column so smaller-is-better
// dominance applies; real values are fixed-point scaled (default 10^3)
// before rounding to integers. Throws ParseError with the row number on
// malformed cells and names any missing column.
Dataset load_columns_csv(const std::string& path, const std::vector<std::string>& columns,
                         const std::vector<bool>& max_is_better, long long scale = 1000);

}  // namespace skydiag
