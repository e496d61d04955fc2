// reference_data.hpp
// Published reference datasets shipped with the library (embedded at build
// time from data/*.json, checksums pinned by tests) and comparison of
// computed results against them.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quditlab/errors.hpp"

namespace quditlab::refdata {

struct ReferenceTable {
    std::string id;
    int version = 0;
    std::string description;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  // throws InvalidInput
    // first row whose key column matches within 1e-9; throws InvalidInput
    const std::vector<double>& row_by_key(const std::string& key_column,
                                          double key) const;
};

std::vector<std::string> reference_table_ids();
const ReferenceTable& reference_table(const std::string& id);

// FNV-1a 64-bit checksum of the embedded JSON payload.
std::uint64_t reference_checksum(const std::string& id);
const std::string& reference_payload(const std::string& id);

// One computed row keyed like the dataset rows.
struct ResultRow {
    double key = 0.0;
    std::map<std::string, double> values;
};

struct ComparisonEntry {
    double key = 0.0;
    std::string column;
    double result = 0.0;
    double reference = 0.0;
    double delta = 0.0;
    bool gated = false;  // counted toward pass/fail
    bool pass = true;
};

struct ComparisonReport {
    std::string id;
    std::vector<ComparisonEntry> entries;
    bool all_gated_pass = true;
};

// Compares computed rows column-by-column against the dataset. Columns
// listed in `gates` are pass/fail at the given tolerance; all other shared
// columns are annotations (delta only). Throws InvalidInput when the id
// does not match or a key row is absent.
ComparisonReport compare_with_reference(
    const std::string& dataset_id, const std::vector<ResultRow>& results,
    const std::map<std::string, double>& gates,
    const std::string& key_column = "d");

}  // namespace quditlab::refdata
