// Command-line front end: every library operation as a subcommand, CSV for
// grids and tables, JSON for single reports. Exit codes: 0 success, 1 an
// exact identity failed while computing, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclefield/arithmetic.hpp"
#include "cyclefield/errors.hpp"
#include "cyclefield/measures.hpp"
#include "cyclefield/montecarlo.hpp"
#include "cyclefield/polyring.hpp"

namespace {

using namespace cyclefield;

// "p^k" or plain "q"; returns the cardinality after validating.
std::uint64_t parse_field_cardinality(const std::string& text) {
    auto caret = text.find('^');
    if (caret == std::string::npos) {
        PrimePower pp = require_prime_power(std::stoull(text));
        std::uint64_t q = 1;
        for (unsigned i = 0; i < pp.k; ++i) q *= pp.p;
        return q;
    }
    std::uint64_t p = std::stoull(text.substr(0, caret));
    unsigned k = static_cast<unsigned>(std::stoull(text.substr(caret + 1)));
    if (!is_prime(p)) throw NonPrimeCharacteristic(std::to_string(p) + " is not prime");
    if (k == 0) throw DomainError("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    return q;
}

std::string float15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open output file " + path);
    out << payload;
}

// "2,4,8" or "2..30" or any comma mix of values and ranges.
std::vector<std::uint64_t> parse_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) throw DomainError("empty entry in list: " + text);
        auto dots = token.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stoull(token));
        } else {
            std::uint64_t lo = std::stoull(token.substr(0, dots));
            std::uint64_t hi = std::stoull(token.substr(dots + 2));
            if (hi < lo) throw DomainError("descending range: " + token);
            for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
        }
    }
    if (out.empty()) throw DomainError("empty list");
    return out;
}

std::uint64_t resolve_cap(std::uint64_t flag_cap) {
    return flag_cap == 0 ? enumeration_cap() : flag_cap;
}

// Rational bounds on |value - 1/e| from the alternating partial sums S_m and
// S_{m+1}, which bracket 1/e (S_even above, S_odd below).
std::pair<Rational, Rational> abs_err_from_e_inv(const Rational& value, unsigned n) {
    unsigned m = std::max(n + 2, 42u);
    if (m % 2 != 0) ++m;
    Rational sum = 0, hi_bracket = 0;
    BigInt fact = 1;
    for (unsigned i = 0; i <= m + 1; ++i) {
        if (i > 0) fact *= i;
        Rational term = make_rational(1, fact);
        if (i % 2 == 0)
            sum += term;
        else
            sum -= term;
        if (i == m) hi_bracket = sum;
    }
    Rational lo_bracket = sum;  // S_{m+1}, m+1 odd
    if (value >= hi_bracket) return {value - hi_bracket, value - lo_bracket};
    if (value <= lo_bracket) return {lo_bracket - value, hi_bracket - value};
    return {Rational(0), std::max(value - lo_bracket, hi_bracket - value)};
}

struct CommonFlags {
    std::string field_text;
    unsigned degree = 0;
    std::string format = "csv";
    std::string out_path;
};

int run_count_irreducibles(const std::string& field_text, unsigned max_degree,
                           const std::string& format, const std::string& out_path) {
    PrimePower pp = require_prime_power(parse_field_cardinality(field_text));
    std::uint64_t q = 1;
    for (unsigned i = 0; i < pp.k; ++i) q *= pp.p;
    std::ostringstream os;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (format == "csv") os << "i,pi,i_times_pi,bounds_ok\n";
    for (unsigned i = 1; i <= max_degree; ++i) {
        BigInt pi = gauss_irreducible_count(q, i);
        bool ok = check_pi_bounds(q, i);
        if (format == "csv") {
            os << i << ',' << pi.get_str() << ',' << BigInt(pi * i).get_str() << ','
               << (ok ? "pass" : "fail") << '\n';
        } else {
            nlohmann::ordered_json row;
            row["i"] = i;
            row["pi"] = pi.get_str();
            row["i_times_pi"] = BigInt(pi * i).get_str();
            row["bounds_ok"] = ok;
            rows.push_back(std::move(row));
        }
        if (!ok) throw IdentityError("pi bounds failed at i = " + std::to_string(i));
    }
    if (format == "json") {
        nlohmann::ordered_json j;
        j["q"] = q;
        j["rows"] = std::move(rows);
        os << j.dump() << '\n';
    }
    write_output(out_path, os.str());
    return 0;
}

int run_l1_grid(const std::string& q_list, const std::string& n_list, const std::string& format,
                const std::string& out_path) {
    auto qs = parse_list(q_list);
    auto ns = parse_list(n_list);
    std::ostringstream os;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (format == "csv") os << "q,n,l1,q_times_l1_float,gap\n";
    double max_qx = 0;
    for (std::uint64_t n : ns) {
        MeasureTable sn = measure_sn(static_cast<unsigned>(n));
        for (std::uint64_t q : qs) {
            MeasureTable poly = measure_poly(q, static_cast<unsigned>(n));
            MeasureComparison cm = compare_measures(sn, poly, q);
            double qx = to_double(Rational(cm.l1 * static_cast<unsigned long>(q)));
            max_qx = std::max(max_qx, qx);
            if (format == "csv") {
                os << q << ',' << n << ',' << rational_string(cm.l1) << ',' << float15(qx) << ','
                   << rational_string(cm.gap) << '\n';
            } else {
                nlohmann::ordered_json row;
                row["q"] = q;
                row["n"] = n;
                row["l1"] = rational_string(cm.l1);
                row["q_times_l1_float"] = qx;
                row["gap"] = rational_string(cm.gap);
                rows.push_back(std::move(row));
            }
        }
    }
    if (format == "csv") {
        os << "# max_q_times_l1_float = " << float15(max_qx) << '\n';
    } else {
        nlohmann::ordered_json j;
        j["rows"] = std::move(rows);
        j["max_q_times_l1_float"] = max_qx;
        os << j.dump() << '\n';
    }
    write_output(out_path, os.str());
    return 0;
}

int run_derangement(unsigned degree, const std::string& out_path) {
    Rational p = derangement_probability(degree);
    nlohmann::ordered_json j;
    j["n"] = degree;
    j["p_n"] = rational_string(p);
    j["p_n_float"] = to_double(p);
    write_output(out_path, j.dump() + "\n");
    return 0;
}

int run_rootless(const std::string& field_text, unsigned degree, std::uint64_t cap,
                 const std::string& out_path) {
    std::uint64_t q = parse_field_cardinality(field_text);
    Rational p = rootless_probability(q, degree, resolve_cap(cap));
    nlohmann::ordered_json j;
    j["q"] = q;
    j["n"] = degree;
    j["p_nq"] = rational_string(p);
    j["p_nq_float"] = to_double(p);
    write_output(out_path, j.dump() + "\n");
    return 0;
}

int run_independence(const std::string& field_text, unsigned degree, std::uint64_t cap,
                     const std::string& format, const std::string& out_path) {
    std::uint64_t q = parse_field_cardinality(field_text);
    auto profile = independence_profile(q, degree, resolve_cap(cap));
    std::ostringstream os;
    if (format == "csv") {
        os << "subset_size,subset_count,probability\n";
        for (const auto& level : profile) {
            os << level.subset_size << ',' << level.subset_count << ','
               << rational_string(level.probability) << '\n';
        }
    } else {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& level : profile) {
            nlohmann::ordered_json row;
            row["subset_size"] = level.subset_size;
            row["subset_count"] = level.subset_count;
            row["probability"] = rational_string(level.probability);
            rows.push_back(std::move(row));
        }
        FieldPtr spec = FieldSpec::parse(field_text);
        nlohmann::ordered_json j;
        j["field"] = spec->name();
        if (spec->extension_degree() > 1) j["modulus"] = spec->modulus_string();
        j["n"] = degree;
        j["rows"] = std::move(rows);
        os << j.dump() << '\n';
    }
    write_output(out_path, os.str());
    return 0;
}

int run_measure_dump(const std::string& field_text, unsigned degree, const std::string& format,
                     const std::string& out_path) {
    std::uint64_t q = parse_field_cardinality(field_text);
    MeasureTable sn = measure_sn(degree);
    MeasureTable poly = measure_poly(q, degree);
    PartitionMap sf = squarefree_submeasure(q, degree);
    std::ostringstream os;
    const auto& support = *sn.support;
    if (format == "csv") {
        os << "partition,p_sn,p_poly,p_sf\n";
        for (std::size_t i = 0; i < support.size(); ++i) {
            os << '"' << support[i].to_string() << "\"," << rational_string(sn.values[i]) << ','
               << rational_string(poly.values[i]) << ',' << rational_string(sf.values[i]) << '\n';
        }
    } else {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < support.size(); ++i) {
            nlohmann::ordered_json row;
            row["partition"] = support[i].to_string();
            row["p_sn"] = rational_string(sn.values[i]);
            row["p_poly"] = rational_string(poly.values[i]);
            row["p_sf"] = rational_string(sf.values[i]);
            rows.push_back(std::move(row));
        }
        nlohmann::ordered_json j;
        j["q"] = q;
        j["n"] = degree;
        j["rows"] = std::move(rows);
        os << j.dump() << '\n';
    }
    write_output(out_path, os.str());
    return 0;
}

int run_sample(const std::string& target, const std::string& field_text, unsigned degree,
               std::uint64_t trials, std::uint64_t seed, const std::string& out_path) {
    if (trials == 0) throw DomainError("trials must be >= 1");
    if (target == "derangement") {
        SampleReport report = estimate_derangement(degree, trials, seed);
        write_output(out_path, report.to_json() + "\n");
        return 0;
    }
    if (field_text.empty()) throw DomainError("--field is required for target " + target);
    std::uint64_t q = parse_field_cardinality(field_text);
    if (target == "rootless") {
        SampleReport report = estimate_rootless(q, degree, trials, seed);
        write_output(out_path, report.to_json() + "\n");
        return 0;
    }
    if (target == "types") {
        TypeDistributionReport report = estimate_cycle_type_distribution(q, degree, trials, seed);
        write_output(out_path, report.to_json() + "\n");
        return 0;
    }
    throw DomainError("unknown sample target: " + target);
}

int run_convergence(unsigned min_degree, unsigned max_degree, std::uint64_t cap,
                    const std::string& format, const std::string& out_path) {
    if (max_degree < 2 || max_degree < min_degree)
        throw DomainError("convergence needs 2 <= min-degree <= max-degree");
    std::ostringstream os;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (format == "csv") os << "n,q,p_n,p_nq,p_n_float,p_nq_float,abs_err_lo,abs_err_hi\n";
    for (unsigned n = std::max(min_degree, 2u); n <= max_degree; ++n) {
        std::uint64_t q = 1;
        while (q * 2 <= n) q *= 2;  // 2^floor(log2 n)
        Rational pn = derangement_probability(n);
        Rational pnq = rootless_probability(q, n, resolve_cap(cap));
        auto [err_lo, err_hi] = abs_err_from_e_inv(pn, n);
        BigInt next_fact = factorial(n + 1);
        if (err_hi > make_rational(1, next_fact))
            throw IdentityError("alternating-series remainder bound failed at n = " +
                                std::to_string(n));
        if (format == "csv") {
            os << n << ',' << q << ',' << rational_string(pn) << ',' << rational_string(pnq) << ','
               << float15(to_double(pn)) << ',' << float15(to_double(pnq)) << ','
               << rational_string(err_lo) << ',' << rational_string(err_hi) << '\n';
        } else {
            nlohmann::ordered_json row;
            row["n"] = n;
            row["q"] = q;
            row["p_n"] = rational_string(pn);
            row["p_nq"] = rational_string(pnq);
            row["p_n_float"] = to_double(pn);
            row["p_nq_float"] = to_double(pnq);
            row["abs_err_lo"] = rational_string(err_lo);
            row["abs_err_hi"] = rational_string(err_hi);
            rows.push_back(std::move(row));
        }
    }
    if (format == "json") {
        nlohmann::ordered_json j;
        j["rows"] = std::move(rows);
        os << j.dump() << '\n';
    }
    write_output(out_path, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cycle-type and factorization-type statistics over finite fields"};
    app.require_subcommand(1);
    app.set_config("--config");

    std::uint64_t cap = 0;
    std::string field_text, format = "csv", out_path, target, q_list, n_list;
    unsigned degree = 0, max_degree = 0, min_degree = 2;
    std::uint64_t trials = 0, seed = 1;

    auto* ci = app.add_subcommand("count-irreducibles", "Irreducible counts and bounds by degree");
    ci->add_option("--field", field_text, "Field as p^k or q")->required();
    ci->add_option("--max-degree", max_degree, "Largest degree")->required();
    ci->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    ci->add_option("--out", out_path);

    auto* grid = app.add_subcommand("l1-grid", "Exact l1 distance between the two measures");
    grid->add_option("--q-list", q_list, "Prime powers, e.g. 2,4,8 or 2..9")->required();
    grid->add_option("--n-list", n_list, "Degrees, e.g. 2..30")->required();
    grid->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    grid->add_option("--out", out_path);

    auto* der = app.add_subcommand("derangement", "Exact fixed-point-free probability P_n");
    der->add_option("--degree", degree)->required();
    der->add_option("--out", out_path);

    const char* cap_help = "Enumeration cap for q^n scans (default 2^24 or CYCLEFIELD_CAP)";

    auto* root = app.add_subcommand("rootless", "Exact rootless probability P_{n,q}");
    root->add_option("--field", field_text)->required();
    root->add_option("--degree", degree)->required();
    root->add_option("--cap", cap, cap_help);
    root->add_option("--out", out_path);

    auto* indep = app.add_subcommand("independence", "Verify root-event independence exhaustively");
    indep->add_option("--field", field_text)->required();
    indep->add_option("--degree", degree)->required();
    indep->add_option("--cap", cap, cap_help);
    indep->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    indep->add_option("--out", out_path);

    auto* dump = app.add_subcommand("measure-dump", "Both measures and the squarefree part, by partition");
    dump->add_option("--field", field_text)->required();
    dump->add_option("--degree", degree)->required();
    dump->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    dump->add_option("--out", out_path);

    auto* sample = app.add_subcommand("sample", "Monte Carlo estimate against the exact value");
    sample->add_option("--target", target, "derangement | rootless | types")->required();
    sample->add_option("--field", field_text, "Required for rootless and types");
    sample->add_option("--degree", degree)->required();
    sample->add_option("--trials", trials)->required();
    sample->add_option("--seed", seed);
    sample->add_option("--out", out_path);

    auto* conv = app.add_subcommand("convergence", "Derangement limit table with q = 2^floor(log2 n)");
    conv->add_option("--max-degree", max_degree)->required();
    conv->add_option("--min-degree", min_degree);
    conv->add_option("--cap", cap, cap_help);
    conv->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    conv->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
        if (ci->parsed())
            return run_count_irreducibles(field_text, max_degree, format, out_path);
        if (grid->parsed()) return run_l1_grid(q_list, n_list, format, out_path);
        if (der->parsed()) return run_derangement(degree, out_path);
        if (root->parsed()) return run_rootless(field_text, degree, cap, out_path);
        if (indep->parsed()) return run_independence(field_text, degree, cap, format, out_path);
        if (dump->parsed()) return run_measure_dump(field_text, degree, format, out_path);
        if (sample->parsed())
            return run_sample(target, field_text, degree, trials, seed, out_path);
        if (conv->parsed()) return run_convergence(min_degree, max_degree, cap, format, out_path);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const cyclefield::IdentityError& e) {
        std::cerr << "identity failure: " << e.what() << "\n";
        return 1;
    } catch (const cyclefield::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
