// qfd: command-line front end for the density library.
//
// Exit codes: 0 success, 1 a theorem check failed or an internal error,
// 2 malformed input or usage, 3 computation refused (DomainError).

#include "qfd/enumerate.hpp"
#include "qfd/global.hpp"
#include "qfd/inverse.hpp"
#include "qfd/local.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using json = nlohmann::ordered_json;
using namespace qfd;

struct Options {
    bool json_out = false;
    bool with_float = false;
};

struct FormInput {
    std::string expr;
    std::string coeffs;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("form", expr, "form expression, e.g. \"x^2+y^2+z^2\"");
        cmd->add_option("--coeffs", coeffs, "comma-separated c_ij in row order");
    }

    QuadraticForm get() const
    {
        if (expr.empty() == coeffs.empty())
            throw ParseError("give exactly one of a form expression or --coeffs");
        return expr.empty() ? parse_coeffs(coeffs) : parse_form(expr);
    }
};

void add_rational(json& j, const std::string& key, const Rational& q, const Options& opt)
{
    j[key] = to_string(q);
    if (opt.with_float)
        j[key + "_float"] = q.get_d();
}

// Aligned "key  value" lines for the human-readable mode.
void print_text(const json& j, int indent = 0)
{
    std::size_t width = 0;
    for (auto it = j.begin(); it != j.end(); ++it)
        width = std::max(width, it.key().size());
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::cout << std::string(static_cast<std::size_t>(indent), ' ') << std::left << std::setw(static_cast<int>(width) + 2)
                  << it.key();
        const json& v = it.value();
        if (v.is_object()) {
            std::cout << "\n";
            print_text(v, indent + 2);
        } else if (v.is_string()) {
            std::cout << v.get<std::string>() << "\n";
        } else if (v.is_array()) {
            std::string line;
            for (const auto& e : v)
                line += (line.empty() ? "" : " ") + (e.is_string() ? e.get<std::string>() : e.dump());
            std::cout << line << "\n";
        } else {
            std::cout << v.dump() << "\n";
        }
    }
}

void emit(const json& j, const Options& opt)
{
    if (opt.json_out)
        std::cout << j.dump() << "\n";
    else
        print_text(j);
}

json table_json(const RepresentationTable& t)
{
    json v = json::array();
    for (long e : t.v)
        v.push_back(e == kInfinity ? json("inf") : json(e));
    return {{"p", t.p}, {"reps", t.reps}, {"v", v}};
}

long parse_prime(const std::string& s)
{
    try {
        std::size_t pos = 0;
        long p = std::stol(s, &pos);
        if (pos != s.size() || p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
            throw ParseError("");
        return p;
    } catch (const std::exception&) {
        throw ParseError("--p must be a prime, got '" + s + "'");
    }
}

std::uint64_t parse_limit(const std::string& s, const char* flag)
{
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || v == 0 || s.find('-') != std::string::npos)
        throw ParseError(std::string(flag) + " must be a positive integer, got '" + s + "'");
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Densities of integers represented by integral quadratic forms"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--json", opt.json_out, "machine-readable JSON output");
    app.add_flag("--float", opt.with_float, "add decimal approximations");

    FormInput density_in, table_in, local_in, empirical_in, exceptions_in, sieve_in, check_in;
    std::string prime_text, limit_text, cutoff_text, alpha_text, beta_text, bitmap_path;
    int v2_k = -1;
    bool local_proxy = false;

    auto* c_density = app.add_subcommand("density", "global density report");
    density_in.attach(c_density);
    auto* c_table = app.add_subcommand("table", "representation table at a prime");
    table_in.attach(c_table);
    c_table->add_option("--p", prime_text, "prime")->required();
    auto* c_local = app.add_subcommand("local", "local density at a prime");
    local_in.attach(c_local);
    c_local->add_option("--p", prime_text, "prime")->required();
    auto* c_empirical = app.add_subcommand("empirical", "empirical density up to a limit");
    empirical_in.attach(c_empirical);
    c_empirical->add_option("--limit", limit_text, "X")->required();
    c_empirical->add_option("--bitmap", bitmap_path, "write the represented set as a QFD1 bitmap");
    c_empirical->add_flag("--local-proxy", local_proxy, "count locally represented integers instead (superset)");
    auto* c_exceptions = app.add_subcommand("exceptions", "locally but not globally represented integers");
    exceptions_in.attach(c_exceptions);
    c_exceptions->add_option("--limit", limit_text, "X")->required();
    auto* c_sieve = app.add_subcommand("sieve", "residue sieve of locally represented integers");
    sieve_in.attach(c_sieve);
    c_sieve->add_option("--cutoff", cutoff_text, "K")->required();
    auto* c_construct = app.add_subcommand("construct", "inverse-problem constructions");
    c_construct->add_option("--alpha", alpha_text, "interval start a/b");
    c_construct->add_option("--beta", beta_text, "interval end c/d");
    c_construct->add_option("--v2", v2_k, "k for the 2-adic valuation construction");
    auto* c_check = app.add_subcommand("check", "theorem-level checks");
    check_in.attach(c_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        json out;
        int code = 0;
        if (c_density->parsed()) {
            auto f = density_in.get();
            auto rep = density(f);
            out["form"] = f.to_string();
            add_rational(out, "density", rep.density, opt);
            json factors = json::object();
            for (const auto& [p, d] : rep.factors)
                factors[std::to_string(p)] = to_string(d);
            out["factors"] = factors;
            out["case"] = to_string(rep.case_tag);
        } else if (c_table->parsed()) {
            auto f = table_in.get();
            out = table_json(representation_table(f, parse_prime(prime_text)));
        } else if (c_local->parsed()) {
            auto f = local_in.get();
            const long p = parse_prime(prime_text);
            out["p"] = p;
            add_rational(out, "local_density", local_density(f, p), opt);
        } else if (c_empirical->parsed()) {
            auto f = empirical_in.get();
            const auto X = parse_limit(limit_text, "--limit");
            RepresentedSet s = local_proxy ? locally_represented_set(f, X) : represented_set(f, X);
            const Rational emp = empirical_density(s);
            const Rational exact = density(f).density;
            out["form"] = f.to_string();
            out["limit"] = X;
            out["method"] = to_string(s.method());
            out["count"] = s.count();
            add_rational(out, "empirical", emp, opt);
            add_rational(out, "density", exact, opt);
            add_rational(out, "gap", abs(Rational(emp - exact)), opt);
            if (!bitmap_path.empty()) {
                std::ofstream file(bitmap_path, std::ios::binary);
                if (!file)
                    throw ParseError("cannot open " + bitmap_path + " for writing");
                write_bitmap(file, s);
                out["bitmap"] = bitmap_path;
            }
        } else if (c_exceptions->parsed()) {
            auto f = exceptions_in.get();
            const auto X = parse_limit(limit_text, "--limit");
            auto e = exceptional_set(f, X);
            if (!opt.json_out) {
                for (auto m : e.members)
                    std::cout << m << "\n";
                return 0;
            }
            out["form"] = f.to_string();
            out["limit"] = X;
            out["count"] = e.members.size();
            out["exceptions"] = e.members;
        } else if (c_sieve->parsed()) {
            auto f = sieve_in.get();
            const auto K = parse_limit(cutoff_text, "--cutoff");
            ResidueSieve sieve(f, static_cast<long>(K));
            out["form"] = f.to_string();
            out["cutoff"] = K;
            out["primes"] = sieve.primes();
            out["modulus"] = sieve.modulus().get_str();
            out["classes"] = sieve.class_count().get_str();
            add_rational(out, "density", sieve.density(), opt);
        } else if (c_construct->parsed()) {
            const bool interval = !alpha_text.empty() || !beta_text.empty();
            if (interval == (v2_k >= 0))
                throw ParseError("construct takes either --alpha/--beta or --v2");
            if (interval) {
                if (alpha_text.empty() || beta_text.empty())
                    throw ParseError("construct needs both --alpha and --beta");
                auto plan = greedy_interval_product(parse_rational(alpha_text), parse_rational(beta_text));
                out["primes"] = plan.primes;
                add_rational(out, "product", plan.product, opt);
                out["interval"] = {to_string(plan.alpha), to_string(plan.beta)};
                out["start_index"] = plan.start_index;
            } else {
                auto c = v2_density_construction(v2_k);
                out["k"] = v2_k;
                out["p"] = c.p;
                add_rational(out, "density", c.density, opt);
                out["v2"] = vp(c.density, 2);
            }
        } else if (c_check->parsed()) {
            auto f = check_in.get();
            auto rep = theorem_checks(f);
            out["form"] = f.to_string();
            add_rational(out, "density", rep.density, opt);
            json checks = json::object();
            for (const auto& c : rep.checks)
                checks[c.name] = {{"applicable", c.applicable}, {"holds", c.holds}, {"detail", c.detail}};
            if (opt.json_out) {
                out["checks"] = checks;
            } else {
                for (const auto& c : rep.checks)
                    out[c.name] = std::string(!c.applicable ? "n/a" : c.holds ? "ok" : "FAILED") + "  (" + c.detail + ")";
            }
            out["all_hold"] = rep.all_hold();
            code = rep.all_hold() ? 0 : 1;
        }
        emit(out, opt);
        return code;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
