#ifndef SPANNERFORGE_TOOLS_CLI_SUPPORT_HPP
#define SPANNERFORGE_TOOLS_CLI_SUPPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "spannerforge/oracles.hpp"
#include "spannerforge/pipeline.hpp"
#include "spannerforge/rounding.hpp"

namespace spannerforge::cli {

using Json = nlohmann::ordered_json;

// Fixed 9-decimal rendering used by every CSV real.
std::string format_real(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Throws InputError when the row width differs from the header.
    void add_row(std::vector<std::string> row);
    void write(std::ostream& out) const;
    // Throws InputError when the path cannot be written.
    void write_file(const std::string& path) const;
};

// Inverse of CsvTable::write. Throws InputError on ragged rows or bad quoting.
CsvTable parse_csv(std::istream& in);

// FNV-1a 64 over the bytes, as 16 hex digits.
std::string content_hash(const std::string& bytes);
// Hash of a file's bytes; "" when the file cannot be read.
std::string file_hash(const std::string& path);

struct RunManifest {
    std::string command;
    Json config = Json::object();
    std::uint64_t seed = 0;
    std::string input_hash;
    std::vector<std::string> outputs;
    std::string status = "ok";
    int exit_code = 0;
    double wall_clock_seconds = 0.0;

    Json to_json() const;
};

Json to_json(const ParamTuple& t);
Json to_json(const std::vector<Edge>& edges);
Json to_json(const GeneratedGraph& g);
Json to_json(const Ld2sReport& r);
Json to_json(const IterationReport& r);
// Per-item rates are included when items is set.
Json to_json(const FaithfulnessReport& r, bool items);
Json to_json(const CorrelationDemo& d);

// Serialized with two-space indentation and a trailing newline.
std::string dump(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace spannerforge::cli

#endif
