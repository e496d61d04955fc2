#include "quditlab/reference_data.hpp"

#include <cmath>
#include <json.hpp>

#include "reference_blobs.hpp"

namespace quditlab::refdata {

namespace {

ReferenceTable parse_table(const std::string& payload) {
    const auto j = nlohmann::json::parse(payload);
    ReferenceTable t;
    t.id = j.at("id").get<std::string>();
    t.version = j.at("version").get<int>();
    t.description = j.at("description").get<std::string>();
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) {
        std::vector<double> r;
        for (const auto& cell : row)
            r.push_back(cell.is_null() ? std::nan("") : cell.get<double>());
        if (r.size() != t.columns.size())
            throw InvalidInput("reference row width mismatch in " + t.id);
        t.rows.push_back(std::move(r));
    }
    return t;
}

const std::map<std::string, ReferenceTable>& registry() {
    static const std::map<std::string, ReferenceTable> tables = [] {
        std::map<std::string, ReferenceTable> out;
        for (const auto& [file, payload] : detail::embedded_reference_data()) {
            ReferenceTable t = parse_table(payload);
            out.emplace(t.id, std::move(t));
        }
        return out;
    }();
    return tables;
}

}  // namespace

int ReferenceTable::column(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    throw InvalidInput("dataset " + id + " has no column " + name);
}

const std::vector<double>& ReferenceTable::row_by_key(
    const std::string& key_column, double key) const {
    const int kc = column(key_column);
    for (const auto& row : rows)
        if (std::abs(row[kc] - key) < 1e-9) return row;
    throw InvalidInput("dataset " + id + " has no row with " + key_column +
                       " = " + std::to_string(key));
}

std::vector<std::string> reference_table_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, table] : registry()) ids.push_back(id);
    return ids;
}

const ReferenceTable& reference_table(const std::string& id) {
    const auto& tables = registry();
    const auto it = tables.find(id);
    if (it == tables.end()) throw InvalidInput("unknown reference dataset: " + id);
    return it->second;
}

const std::string& reference_payload(const std::string& id) {
    for (const auto& [file, payload] : detail::embedded_reference_data()) {
        if (payload.find("\"id\": \"" + id + "\"") != std::string::npos)
            return payload;
    }
    throw InvalidInput("unknown reference dataset: " + id);
}

std::uint64_t reference_checksum(const std::string& id) {
    const std::string& payload = reference_payload(id);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : payload) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

ComparisonReport compare_with_reference(
    const std::string& dataset_id, const std::vector<ResultRow>& results,
    const std::map<std::string, double>& gates, const std::string& key_column) {
    const ReferenceTable& table = reference_table(dataset_id);
    ComparisonReport report;
    report.id = dataset_id;
    for (const auto& result : results) {
        const auto& ref_row = table.row_by_key(key_column, result.key);
        for (const auto& [column, value] : result.values) {
            const double reference = ref_row[table.column(column)];
            ComparisonEntry entry;
            entry.key = result.key;
            entry.column = column;
            entry.result = value;
            entry.reference = reference;
            entry.delta = value - reference;
            const auto gate = gates.find(column);
            if (gate != gates.end()) {
                entry.gated = true;
                entry.pass = std::abs(entry.delta) <= gate->second;
                report.all_gated_pass = report.all_gated_pass && entry.pass;
            }
            report.entries.push_back(entry);
        }
    }
    return report;
}

}  // namespace quditlab::refdata
