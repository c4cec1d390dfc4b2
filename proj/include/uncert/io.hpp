#pragma once

// CSV and JSON encodings of the library's value types.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uncert/entropy.hpp"
#include "uncert/polarimeter.hpp"
#include "uncert/qubit.hpp"
#include "uncert/region.hpp"

namespace uncert {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to exactly the same double.
std::string format_number(double v);

/// Minimal CSV table: a mandatory header and rows of pre-formatted cells.
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);

    /// Throws std::invalid_argument when the row width differs from the header.
    void add_row(std::vector<std::string> row);

    const std::vector<std::string> &header() const { return header_; }
    const std::vector<std::vector<std::string>> &rows() const { return rows_; }

    std::string to_string() const;
    /// Throws IoError when the header is missing or a row has the wrong width.
    static CsvTable parse(std::string_view text);

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes the file in binary mode; throws IoError on failure.
void write_text_file(const std::filesystem::path &path, std::string_view contents);
std::string read_text_file(const std::filesystem::path &path);

/// Columns prep_axis (a|b), prep_sign (+|-), outcome_m (1-4), count.
CsvTable counts_to_csv(const CountsRecord &record);
/// Fills counts_a and counts_b; the config and target_q are left default.
CountsRecord counts_from_csv(const CsvTable &table);

nlohmann::json to_json(const BlochVector &v);
nlohmann::json to_json(const QubitEffect &e);
nlohmann::json to_json(const Povm &povm);
nlohmann::json to_json(const JointDistribution &joint);
nlohmann::json to_json(const NoisePoint &p);
nlohmann::json to_json(const MixingSegment &seg);
nlohmann::json to_json(const BeamlineConfig &config);
nlohmann::json to_json(const CountsRecord &record);

BlochVector bloch_from_json(const nlohmann::json &j);
Povm povm_from_json(const nlohmann::json &j);

const char *to_string(ContrastModel m);
ContrastModel contrast_model_from_string(std::string_view s);

}  // namespace uncert
