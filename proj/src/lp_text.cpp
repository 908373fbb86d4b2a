#include "spannerforge/lp_text.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

#include "spannerforge/errors.hpp"

namespace spannerforge {

namespace {

std::string num(double v) {
    if (v == kInfinity) return "+inf";
    if (v == -kInfinity) return "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_expression(std::ostringstream& out, const LinearProgram& lp, const std::vector<Term>& terms) {
    int on_line = 0;
    bool first = true;
    for (const Term& t : terms) {
        if (on_line == 8) {
            out << "\n  ";
            on_line = 0;
        }
        const double a = std::abs(t.coef);
        if (first) out << (t.coef < 0 ? "- " : "");
        else out << (t.coef < 0 ? " - " : " + ");
        if (a != 1.0) out << num(a) << ' ';
        out << lp.variable(t.var).name;
        first = false;
        ++on_line;
    }
}

}  // namespace

std::string export_lp_text(const LinearProgram& lp) {
    std::ostringstream out;
    out << "\\ " << lp.num_variables() << " variables, " << lp.num_rows() << " rows\n";
    out << (lp.has_objective() && lp.sense() == Sense::Maximize ? "Maximize\n" : "Minimize\n");
    out << " obj: ";
    write_expression(out, lp, lp.objective());
    out << "\nSubject To\n";
    for (const Row& r : lp.rows()) {
        out << ' ' << r.name << ": ";
        if (r.terms.empty()) {
            if (lp.num_variables() == 0) throw ContractError("export_lp_text: empty row without variables");
            out << "0 " << lp.variable(0).name;
        } else {
            write_expression(out, lp, r.terms);
        }
        out << (r.rel == Relation::LessEqual ? " <= " : r.rel == Relation::GreaterEqual ? " >= " : " = ")
            << num(r.rhs) << '\n';
    }
    out << "Bounds\n";
    for (const Variable& v : lp.variables()) {
        out << ' ';
        if (v.lo == v.hi) out << v.name << " = " << num(v.lo);
        else if (v.lo == -kInfinity && v.hi == kInfinity) out << v.name << " free";
        else if (v.hi == kInfinity) out << v.name << " >= " << num(v.lo);
        else out << num(v.lo) << " <= " << v.name << " <= " << num(v.hi);
        out << '\n';
    }
    out << "End\n";
    return out.str();
}

namespace {

struct Token {
    enum Kind { Ident, Number, Sign, Rel, Colon, End } kind = End;
    std::string text;
    double value = 0.0;
    int line = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip();
            Token t;
            t.line = line_;
            if (pos_ >= s_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = s_[pos_];
            if (c == '<' || c == '>' || c == '=') {
                t.kind = Token::Rel;
                std::string op(1, c);
                ++pos_;
                if (pos_ < s_.size() && (s_[pos_] == '=' || s_[pos_] == '<' || s_[pos_] == '>')) op += s_[pos_++];
                if (op == "<" || op == "<=" || op == "=<") t.text = "<=";
                else if (op == ">" || op == ">=" || op == "=>") t.text = ">=";
                else if (op == "=") t.text = "=";
                else throw InputError("line " + std::to_string(line_) + ": bad operator '" + op + "'");
            } else if (c == '+' || c == '-') {
                t.kind = Token::Sign;
                t.text = std::string(1, c);
                ++pos_;
            } else if (c == ':') {
                t.kind = Token::Colon;
                ++pos_;
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                const char* begin = s_.data() + pos_;
                std::string buf(begin, std::min<std::size_t>(64, s_.size() - pos_));
                char* end = nullptr;
                t.kind = Token::Number;
                t.value = std::strtod(buf.c_str(), &end);
                if (end == buf.c_str())
                    throw InputError("line " + std::to_string(line_) + ": bad number");
                pos_ += static_cast<std::size_t>(end - buf.c_str());
            } else {
                t.kind = Token::Ident;
                while (pos_ < s_.size()) {
                    const char d = s_[pos_];
                    if (std::isspace(static_cast<unsigned char>(d)) || d == '+' || d == '-' || d == '<' ||
                        d == '>' || d == '=' || d == ':' || d == '\\')
                        break;
                    t.text += d;
                    ++pos_;
                }
                const std::string low = lower(t.text);
                if (low == "inf" || low == "infinity") {
                    t.kind = Token::Number;
                    t.value = kInfinity;
                }
            }
            out.push_back(t);
        }
    }

    static std::string lower(std::string s) {
        for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    }

private:
    void skip() {
        while (pos_ < s_.size()) {
            const char c = s_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '\\') {
                while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

struct NamedTerm {
    std::string var;
    double coef;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    LinearProgram run() {
        const std::string head = keyword();
        Sense sense;
        if (head == "minimize" || head == "min" || head == "minimum") sense = Sense::Minimize;
        else if (head == "maximize" || head == "max" || head == "maximum") sense = Sense::Maximize;
        else fail("expected Minimize or Maximize");
        ++i_;
        if (peek_name()) i_ += 2;
        std::vector<NamedTerm> obj = expression();
        if (!section_subject_to()) fail("expected 'Subject To'");

        struct RawRow {
            std::string name;
            std::vector<NamedTerm> terms;
            Relation rel;
            double rhs;
        };
        std::vector<RawRow> rows;
        while (cur().kind != Token::End && keyword() != "bounds" && keyword() != "end") {
            RawRow r;
            if (peek_name()) {
                r.name = cur().text;
                i_ += 2;
            }
            r.terms = expression();
            if (cur().kind != Token::Rel) fail("expected a relation");
            r.rel = cur().text == "<=" ? Relation::LessEqual
                  : cur().text == ">=" ? Relation::GreaterEqual
                                       : Relation::Equal;
            ++i_;
            r.rhs = signed_number();
            rows.push_back(std::move(r));
        }

        std::vector<std::string> order;
        std::unordered_map<std::string, std::pair<double, double>> bounds;
        auto bound_of = [&](const std::string& name) -> std::pair<double, double>& {
            auto it = bounds.find(name);
            if (it == bounds.end()) {
                order.push_back(name);
                it = bounds.emplace(name, std::make_pair(0.0, kInfinity)).first;
            }
            return it->second;
        };
        if (keyword() == "bounds") {
            ++i_;
            while (cur().kind != Token::End && keyword() != "end") bound_line(bound_of);
        }
        if (keyword() != "end") fail("expected 'End'");
        ++i_;
        if (cur().kind != Token::End) fail("content after 'End'");

        for (const NamedTerm& t : obj) bound_of(t.var);
        for (const RawRow& r : rows)
            for (const NamedTerm& t : r.terms) bound_of(t.var);

        LinearProgram lp;
        for (const std::string& name : order) {
            const auto& [lo, hi] = bounds[name];
            lp.add_variable(name, lo, hi);
        }
        auto resolve = [&](const std::vector<NamedTerm>& ts) {
            std::vector<Term> out;
            for (const NamedTerm& t : ts) out.push_back({*lp.find_variable(t.var), t.coef});
            return out;
        };
        if (!obj.empty()) lp.set_objective(sense, resolve(obj));
        for (RawRow& r : rows) lp.add_row(resolve(r.terms), r.rel, r.rhs, r.name);
        return lp;
    }

private:
    const Token& cur() const { return t_[i_]; }
    std::string keyword() const { return cur().kind == Token::Ident ? Lexer::lower(cur().text) : ""; }
    bool peek_name() const {
        return cur().kind == Token::Ident && i_ + 1 < t_.size() && t_[i_ + 1].kind == Token::Colon;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("LP text line " + std::to_string(cur().line) + ": " + what);
    }

    bool section_subject_to() {
        const std::string k = keyword();
        if (k == "subject" && i_ + 1 < t_.size() && Lexer::lower(t_[i_ + 1].text) == "to") {
            i_ += 2;
            return true;
        }
        if (k == "st" || k == "s.t.") {
            ++i_;
            return true;
        }
        return false;
    }

    bool at_section() const {
        const std::string k = keyword();
        return k == "subject" || k == "st" || k == "s.t." || k == "bounds" || k == "end";
    }

    double signed_number() {
        double sign = 1.0;
        while (cur().kind == Token::Sign) {
            if (cur().text == "-") sign = -sign;
            ++i_;
        }
        if (cur().kind != Token::Number) fail("expected a number");
        const double v = sign * cur().value;
        ++i_;
        return v;
    }

    std::vector<NamedTerm> expression() {
        std::vector<NamedTerm> out;
        while (true) {
            if (cur().kind == Token::Rel || cur().kind == Token::End) break;
            if (cur().kind == Token::Ident && (at_section() || peek_name())) break;
            double coef = 1.0;
            bool any = false;
            while (cur().kind == Token::Sign) {
                if (cur().text == "-") coef = -coef;
                ++i_;
                any = true;
            }
            if (cur().kind == Token::Number) {
                coef *= cur().value;
                ++i_;
                any = true;
            }
            if (cur().kind != Token::Ident) {
                if (any) fail("expected a variable name");
                break;
            }
            out.push_back({cur().text, coef});
            ++i_;
        }
        return out;
    }

    template <class F>
    void bound_line(F& bound_of) {
        if (cur().kind == Token::Ident) {
            const std::string name = cur().text;
            ++i_;
            auto& b = bound_of(name);
            if (keyword() == "free") {
                ++i_;
                b = {-kInfinity, kInfinity};
                return;
            }
            if (cur().kind != Token::Rel) fail("expected a relation in bounds");
            const std::string rel = cur().text;
            ++i_;
            const double v = signed_number();
            if (rel == "=") b = {v, v};
            else if (rel == ">=") b.first = v;
            else b.second = v;
            return;
        }
        const double v = signed_number();
        if (cur().kind != Token::Rel) fail("expected a relation in bounds");
        const std::string rel = cur().text;
        ++i_;
        if (cur().kind != Token::Ident) fail("expected a variable in bounds");
        auto& b = bound_of(cur().text);
        ++i_;
        if (rel == "<=") b.first = v;
        else if (rel == ">=") b.second = v;
        else b = {v, v};
        if (cur().kind == Token::Rel) {
            const std::string rel2 = cur().text;
            ++i_;
            const double w = signed_number();
            if (rel2 == "<=") b.second = w;
            else if (rel2 == ">=") b.first = w;
            else fail("bad double bound");
        }
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
};

}  // namespace

LinearProgram parse_lp_text(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

ExternalSolution parse_solution_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    ExternalSolution out;
    bool have_status = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;
        if (!have_status) {
            const std::string s = Lexer::lower(a);
            if (s == "optimal") out.status = LPStatus::Optimal;
            else if (s == "feasible") out.status = LPStatus::Feasible;
            else if (s == "infeasible") out.status = LPStatus::Infeasible;
            else if (s == "unbounded") out.status = LPStatus::Unbounded;
            else throw InputError("solution line " + std::to_string(lineno) + ": unknown status '" + a + "'");
            have_status = true;
            continue;
        }
        if (!(ls >> b) || (ls >> extra))
            throw InputError("solution line " + std::to_string(lineno) + ": expected 'name value'");
        char* end = nullptr;
        const double v = std::strtod(b.c_str(), &end);
        if (*end != '\0') throw InputError("solution line " + std::to_string(lineno) + ": bad value");
        out.values[a] = v;
    }
    if (!have_status) throw InputError("solution file has no status line");
    return out;
}

std::string format_solution_text(const LinearProgram& lp, const LPSolution& sol) {
    std::ostringstream out;
    out << to_string(sol.status) << '\n';
    if (sol.has_point())
        for (int j = 0; j < lp.num_variables(); ++j) out << lp.variable(j).name << ' ' << num(sol.values[j]) << '\n';
    return out.str();
}

}  // namespace spannerforge
