#include "cli_support.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "spannerforge/errors.hpp"

namespace spannerforge::cli {

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    std::string s = buf;
    if (s == "-0.000000000") s = "0.000000000";
    return s;
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size())
        throw InputError("CSV row has " + std::to_string(row.size()) + " fields, header has " +
                         std::to_string(header.size()));
    rows.push_back(std::move(row));
}

namespace {

void write_field(std::ostream& out, const std::string& f) {
    if (f.find_first_of(",\"\n") == std::string::npos) {
        out << f;
        return;
    }
    out << '"';
    for (char c : f) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

void write_line(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        write_field(out, fields[i]);
    }
    out << '\n';
}

}  // namespace

void CsvTable::write(std::ostream& out) const {
    write_line(out, header);
    for (const auto& r : rows) write_line(out, r);
}

void CsvTable::write_file(const std::string& path) const {
    std::ostringstream s;
    write(s);
    write_text_file(path, s.str());
}

CsvTable parse_csv(std::istream& in) {
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false, field_started = false;
    int line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"') {
            if (field_started) throw InputError("line " + std::to_string(line) + ": stray quote in CSV field");
            quoted = field_started = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            field_started = false;
        } else if (c == '\n') {
            record.push_back(std::move(field));
            records.push_back(std::move(record));
            field.clear();
            record.clear();
            field_started = false;
            ++line;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw InputError("unterminated quoted CSV field");
    if (field_started || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    if (records.empty()) throw InputError("CSV has no header row");
    CsvTable t;
    t.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != t.header.size())
            throw InputError("line " + std::to_string(r + 1) + ": CSV row width differs from header");
        t.rows.push_back(std::move(records[r]));
    }
    return t;
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "";
    return content_hash(std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>()));
}

Json RunManifest::to_json() const {
    Json j;
    j["command"] = command;
    j["config"] = config;
    j["seed"] = seed;
    j["input_hash"] = input_hash;
    j["outputs"] = outputs;
    j["status"] = status;
    j["exit_code"] = exit_code;
    j["wall_clock_seconds"] = wall_clock_seconds;
    return j;
}

Json to_json(const ParamTuple& t) { return Json::array({t.k0, t.k1, t.d0, t.d1}); }

Json to_json(const std::vector<Edge>& edges) {
    Json a = Json::array();
    for (const Edge& e : edges) a.push_back(Json::array({e.u, e.v}));
    return a;
}

Json to_json(const GeneratedGraph& g) {
    Json j;
    j["mode"] = g.mode == GenMode::Random ? "random" : "planted";
    j["n"] = g.n;
    j["alpha"] = g.alpha;
    j["p"] = g.p;
    j["edges"] = g.graph.num_edges();
    j["seed"] = g.seed;
    if (g.mode == GenMode::Planted) {
        j["k"] = g.k;
        j["beta"] = g.beta;
        j["plant_vertices"] = g.plant_vertices;
        j["plant_edges"] = to_json(g.plant_edges);
        j["plant_attempts"] = g.plant_attempts;
    }
    return j;
}

Json to_json(const IterationReport& r) {
    Json j;
    j["iteration"] = r.iteration;
    j["lambda"] = r.lambda;
    j["demands_before"] = r.demands_before;
    j["demands_after"] = r.demands_after;
    j["x_threshold"] = kEdgeThreshold;
    j["ex_size"] = r.ex_size;
    j["ex_new"] = r.ex_new;
    j["rounding_new"] = r.rounding_new;
    j["max_degree_ex"] = r.max_degree_ex;
    j["max_degree_rounding"] = r.max_degree_rounding;
    j["max_degree_added"] = r.max_degree_added;
    j["lp_iterations"] = r.lp_iterations;
    j["lp_reused"] = r.lp_reused;
    Json blocks = Json::array();
    for (const BlockOutcome& b : r.blocks) {
        Json o;
        o["u"] = b.u;
        o["tuple_index"] = b.tuple_index;
        o["tau"] = to_json(b.tau);
        o["z_empty"] = b.z_empty;
        o["fired"] = b.fired;
        if (b.fired) {
            o["route"] = b.route;
            o["factor"] = b.factor;
            o["vertices"] = b.vertices;
            o["bought"] = b.bought;
        }
        if (!b.error.empty()) o["error"] = b.error;
        blocks.push_back(std::move(o));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

Json to_json(const Ld2sReport& r) {
    Json j;
    j["status"] = r.status;
    j["cost"] = r.cost;
    j["best_lambda"] = r.best_lambda;
    j["lambda_low"] = r.lambda_low;
    j["lp_iterations"] = r.lp_iterations;
    j["heuristic_cost"] = r.heuristic_cost;
    Json ms = Json::array();
    for (const ParamTuple& t : r.multiset) ms.push_back(to_json(t));
    j["multiset"] = std::move(ms);
    Json runs = Json::array();
    for (const LambdaRun& run : r.runs)
        runs.push_back({{"lambda", run.lambda},
                        {"status", run.status},
                        {"iterations", run.iterations},
                        {"cost", run.cost},
                        {"patched", run.patched}});
    j["runs"] = std::move(runs);
    Json its = Json::array();
    for (const IterationReport& it : r.iterations) its.push_back(to_json(it));
    j["iterations"] = std::move(its);
    j["spanner"] = to_json(r.spanner);
    return j;
}

namespace {

Json rate_json(const ItemRate& r) {
    return {{"hits", r.hits}, {"rate", r.rate}, {"ci_low", r.lo}, {"ci_high", r.hi}, {"lp", r.lp}};
}

}  // namespace

Json to_json(const FaithfulnessReport& r, bool items) {
    Json j;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["f"] = r.f;
    j["phi"] = r.options.phi;
    j["slack"] = r.options.slack;
    j["z"] = r.options.z;
    j["max_vertices"] = r.max_vertices;
    j["mean_edges"] = r.mean_edges;
    j["vertex_mass"] = r.vertex_mass;
    j["edge_mass"] = r.edge_mass;
    Json v = Json::array();
    for (int c = 0; c < 4; ++c)
        v.push_back({{"condition", c + 1},
                     {"pass", r.verdicts[c].pass},
                     {"margin", r.verdicts[c].margin},
                     {"detail", r.verdicts[c].detail}});
    j["verdicts"] = std::move(v);
    j["all_pass"] = r.all_pass();
    if (items) {
        Json vs = Json::array();
        for (std::size_t i = 0; i < r.vertices.size(); ++i) {
            Json o = rate_json(r.vertex_rates[i]);
            o["vertex"] = r.vertices[i];
            vs.push_back(std::move(o));
        }
        j["vertex_rates"] = std::move(vs);
        Json es = Json::array();
        for (std::size_t e = 0; e < r.edge_rates.size(); ++e) {
            Json o = rate_json(r.edge_rates[e]);
            o["edge"] = e;
            es.push_back(std::move(o));
        }
        j["edge_rates"] = std::move(es);
    }
    return j;
}

Json to_json(const CorrelationDemo& d) {
    return {{"trials", d.trials},
            {"rate_e", d.rate_e},
            {"rate_f", d.rate_f},
            {"joint_rate", d.joint_rate},
            {"lp_joint", d.lp_joint}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!out) throw InputError("cannot write " + path);
}

}  // namespace spannerforge::cli
