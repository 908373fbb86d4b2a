#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lp_internal.hpp"
#include "spannerforge/errors.hpp"
#include "spannerforge/lp_text.hpp"

namespace spannerforge::detail {

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

}  // namespace

LPSolution solve_external(const LinearProgram& lp, const std::string& command) {
    std::string dir_template = (std::filesystem::temp_directory_path() / "spannerforge-lp-XXXXXX").string();
    if (!mkdtemp(dir_template.data())) throw NumericalError("cannot create a temporary directory");
    const std::filesystem::path dir(dir_template);
    const auto in_path = dir / "problem.lp";
    const auto out_path = dir / "problem.sol";
    {
        std::ofstream f(in_path);
        f << export_lp_text(lp);
    }
    const std::string cmd = command + " " + shell_quote(in_path.string()) + " " + shell_quote(out_path.string());
    const int rc = std::system(cmd.c_str());
    std::string text;
    {
        std::ifstream f(out_path);
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
    if (rc != 0) throw NumericalError("external solver exited with status " + std::to_string(rc));

    const ExternalSolution ext = parse_solution_text(text);
    LPSolution out;
    out.solver = "external";
    out.status = ext.status;
    if (!out.has_point()) return out;
    out.values.assign(lp.num_variables(), 0.0);
    for (const auto& [name, v] : ext.values) {
        auto j = lp.find_variable(name);
        if (!j) throw InputError("external solution names unknown variable '" + name + "'");
        out.values[*j] = v;
    }
    for (const Term& t : lp.objective()) out.objective += t.coef * out.values[t.var];
    out.max_violation = max_violation(lp, out.values);
    return out;
}

}  // namespace spannerforge::detail
