#include "uncert/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace uncert {

std::string format_number(double v) {
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) {
        throw std::logic_error("format_number: to_chars failed");
    }
    return {buf.data(), end};
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) {
        throw std::invalid_argument("CsvTable: header must not be empty");
    }
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) {
        throw std::invalid_argument("CsvTable: row has " + std::to_string(row.size()) + " cells, header has " +
                                    std::to_string(header_.size()));
    }
    rows_.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    emit(header_);
    for (const auto &row : rows_) {
        emit(row);
    }
    return out;
}

CsvTable CsvTable::parse(std::string_view text) {
    auto split = [](std::string_view line) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            cells.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        return cells;
    };
    std::vector<std::vector<std::string>> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty()) {
            lines.push_back(split(line));
        }
        pos = eol + 1;
    }
    if (lines.empty()) {
        throw IoError("CSV: missing header row");
    }
    CsvTable table(std::move(lines.front()));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].size() != table.header_.size()) {
            throw IoError("CSV: row " + std::to_string(i) + " has the wrong number of columns");
        }
        table.rows_.push_back(std::move(lines[i]));
    }
    return table;
}

void write_text_file(const std::filesystem::path &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CsvTable counts_to_csv(const CountsRecord &record) {
    CsvTable table({"prep_axis", "prep_sign", "outcome_m", "count"});
    for (int axis = 0; axis < 2; ++axis) {
        const CountMatrix &c = axis == 0 ? record.counts_a : record.counts_b;
        for (int x = 0; x < 2; ++x) {
            for (int m = 0; m < 4; ++m) {
                table.add_row({axis == 0 ? "a" : "b", x == 0 ? "+" : "-", std::to_string(m + 1),
                               std::to_string(c[x][m])});
            }
        }
    }
    return table;
}

CountsRecord counts_from_csv(const CsvTable &table) {
    const std::vector<std::string> expected{"prep_axis", "prep_sign", "outcome_m", "count"};
    if (table.header() != expected) {
        throw IoError("counts CSV: unexpected header");
    }
    CountsRecord rec;
    std::array<std::array<std::array<bool, 4>, 2>, 2> seen{};
    for (const auto &row : table.rows()) {
        const int axis = row[0] == "a" ? 0 : (row[0] == "b" ? 1 : -1);
        const int x = row[1] == "+" ? 0 : (row[1] == "-" ? 1 : -1);
        int m = 0;
        std::uint64_t count = 0;
        const auto [pm, em] = std::from_chars(row[2].data(), row[2].data() + row[2].size(), m);
        const auto [pc, ec] = std::from_chars(row[3].data(), row[3].data() + row[3].size(), count);
        if (axis < 0 || x < 0 || em != std::errc{} || ec != std::errc{} || m < 1 || m > 4 ||
            pc != row[3].data() + row[3].size()) {
            throw IoError("counts CSV: malformed row");
        }
        if (seen[axis][x][m - 1]) {
            throw IoError("counts CSV: duplicate cell");
        }
        seen[axis][x][m - 1] = true;
        (axis == 0 ? rec.counts_a : rec.counts_b)[x][m - 1] = count;
    }
    return rec;
}

nlohmann::json to_json(const BlochVector &v) { return nlohmann::json::array({v.x, v.y, v.z}); }

nlohmann::json to_json(const QubitEffect &e) { return {{"gamma", e.gamma()}, {"v", to_json(e.v())}}; }

nlohmann::json to_json(const Povm &povm) {
    auto arr = nlohmann::json::array();
    for (const auto &e : povm.effects()) {
        arr.push_back(to_json(e));
    }
    return arr;
}

nlohmann::json to_json(const JointDistribution &joint) {
    auto rows = nlohmann::json::array();
    for (std::size_t x = 0; x < 2; ++x) {
        const auto r = joint.row(x);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

nlohmann::json to_json(const NoisePoint &p) {
    nlohmann::json j{{"n_a", p.n_a}, {"n_b", p.n_b}};
    j["sigma_a"] = p.sigma_a ? nlohmann::json(*p.sigma_a) : nlohmann::json(nullptr);
    j["sigma_b"] = p.sigma_b ? nlohmann::json(*p.sigma_b) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const MixingSegment &seg) {
    constexpr double kDeg = 180.0 / std::numbers::pi;
    return {{"first", {seg.first.s, seg.first.t}},
            {"second", {seg.second.s, seg.second.t}},
            {"theta_first_deg", seg.theta_first * kDeg},
            {"theta_second_deg", seg.theta_second * kDeg},
            {"refined", seg.refined}};
}

const char *to_string(ContrastModel m) {
    return m == ContrastModel::BothAnalyzers ? "both-analyzers" : "second-analyzer-only";
}

ContrastModel contrast_model_from_string(std::string_view s) {
    if (s == "both-analyzers") {
        return ContrastModel::BothAnalyzers;
    }
    if (s == "second-analyzer-only") {
        return ContrastModel::SecondAnalyzerOnly;
    }
    throw std::domain_error("unknown contrast model: " + std::string(s));
}

nlohmann::json to_json(const BeamlineConfig &config) {
    return {{"count_rate", config.count_rate},
            {"slot_duration", config.slot_duration},
            {"visibility", config.visibility},
            {"rng_seed", config.rng_seed},
            {"contrast", to_string(config.contrast)}};
}

nlohmann::json to_json(const CountsRecord &record) {
    return {{"counts_a", record.counts_a},
            {"counts_b", record.counts_b},
            {"config", to_json(record.config)},
            {"target_q", record.target_q}};
}

BlochVector bloch_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 3) {
        throw IoError("BlochVector JSON must be [x, y, z]");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Povm povm_from_json(const nlohmann::json &j) {
    if (!j.is_array()) {
        throw IoError("Povm JSON must be a list of {gamma, v}");
    }
    std::vector<QubitEffect> effects;
    for (const auto &e : j) {
        effects.emplace_back(e.at("gamma").get<double>(), bloch_from_json(e.at("v")));
    }
    return Povm(std::move(effects));
}

}  // namespace uncert
