#include <omp.h>

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dw/cli.hpp"
#include "json.hpp"

namespace dw::cli {

namespace {

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<long> parse_primes(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(tok, &pos);
        } catch (const std::exception&) {
            throw InputError("invalid prime list: '" + s + "'");
        }
        if (pos != tok.size()) throw InputError("invalid prime list: '" + s + "'");
        out.push_back(v);
    }
    return out;
}

Format parse_format(const std::string& s) {
    if (s == "text") return Format::text;
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw InputError("unknown format: " + s);
}

DualityPreset group_preset(const std::string& g) {
    if (g != "q8" && g != "d4") throw InputError("unknown group: " + g + " (expected q8 or d4)");
    return preset_by_name(g);
}

struct Options {
    std::string primes, group = "q8", format = "text", cache_dir;
    bool no_cache = false;
    std::string search = "descent";
    unsigned aux = 0, threads = 0, count = 20, box_cap = 0;
    bool verbose = false;
    std::uint64_t seed = 1;
};

RunConfig make_config(const Options& o, bool need_primes) {
    RunConfig cfg;
    if (need_primes) cfg.primes = parse_primes(o.primes);
    cfg.group = o.group;
    cfg.format = parse_format(o.format);
    if (o.no_cache)
        cfg.cache_dir = std::filesystem::path();
    else if (!o.cache_dir.empty())
        cfg.cache_dir = std::filesystem::path(o.cache_dir);
    if (o.aux) cfg.aux_primes = o.aux;
    if (o.search == "box")
        cfg.route = NormSearchRoute::height_box;
    else if (o.search != "descent")
        throw InputError("unknown search route: " + o.search + " (expected descent or box)");
    if (o.box_cap) cfg.box_cap = o.box_cap;
    cfg.threads = o.threads;
    cfg.verbose = o.verbose;
    cfg.seed = o.seed;
    if (cfg.threads) omp_set_num_threads(static_cast<int>(cfg.threads));
    return cfg;
}

int cmd_compute(const RunConfig& cfg, std::ostream& out) {
    auto f = FieldSpec::make(cfg.primes);
    auto preset = group_preset(cfg.group);
    ComputeResult r = compute(f, preset, cfg);
    switch (cfg.format) {
        case Format::json: out << render_json(r) << "\n"; break;
        case Format::csv: out << csv_header() << "\n" << csv_row(r.report) << "\n"; break;
        case Format::text:
            out << render_text(r);
            if (cfg.verbose) out << "cache:         " << (r.cache_hit ? "hit" : "miss") << "\n";
            break;
    }
    if (r.report.observation_violated) return kObservationViolated;
    return kOk;
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto preset = group_preset(cfg.group);
    const auto& golden = golden_table();
    std::vector<ComputeResult> rows(golden.size());
    std::exception_ptr eptr;
#pragma omp parallel for schedule(dynamic, 1) if (cfg.threads > 1)
    for (long i = 0; i < static_cast<long>(golden.size()); ++i) {
        try {
            rows[i] = compute(FieldSpec::make(golden[i].primes), preset, cfg);
        } catch (...) {
#pragma omp critical(dw_table_err)
            if (!eptr) eptr = std::current_exception();
        }
    }
    if (eptr) std::rethrow_exception(eptr);

    std::vector<std::string> diffs;
    bool violated = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& R = rows[i].report;
        const auto& g = golden[i];
        const std::string name = "(" + primes_string(g.primes) + ")";
        if (preset.name == "q8") {
            if (rational_string(R.z_omega) != g.z_omega)
                diffs.push_back(name + " Z^omega: expected " + g.z_omega + ", got " + rational_string(R.z_omega));
            if (rational_string(R.z_omega_hat) != g.z_omega_hat)
                diffs.push_back(name + " Z^omega_hat: expected " + g.z_omega_hat + ", got " +
                                rational_string(R.z_omega_hat));
        } else if (!R.equal) {
            violated = true;
            diffs.push_back(name + " paper-observation violated: Z^omega = " + rational_string(R.z_omega) +
                            ", Z^omega_hat = " + rational_string(R.z_omega_hat));
        }
        if (R.linking_symmetric != g.symmetric)
            diffs.push_back(name + " linking: expected " + linking_word(g.symmetric) + ", got " +
                            linking_word(R.linking_symmetric));
    }

    switch (cfg.format) {
        case Format::csv:
            out << csv_header() << "\n";
            for (const auto& r : rows) out << csv_row(r.report) << "\n";
            break;
        case Format::json: {
            nlohmann::ordered_json js = nlohmann::ordered_json::array();
            for (const auto& r : rows) js.push_back(nlohmann::ordered_json::parse(render_json(r)));
            nlohmann::ordered_json doc;
            doc["group"] = preset.name;
            doc["rows"] = js;
            doc["match"] = diffs.empty();
            doc["diff"] = diffs;
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::text: {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%-28s %-9s %-12s %-14s\n", "Primes", "Z^omega", "Z^omega_hat", "Linking");
            out << buf;
            for (const auto& r : rows) {
                const auto& R = r.report;
                std::snprintf(buf, sizeof buf, "%-28s %-9s %-12s %-14s\n",
                              ("(" + primes_string(R.spec.primes) + ")").c_str(), decimal_string(R.z_omega).c_str(),
                              decimal_string(R.z_omega_hat).c_str(), linking_word(R.linking_symmetric).c_str());
                out << buf;
            }
            out << (diffs.empty() ? "all rows match the reference values\n" : "mismatch against the reference values\n");
            break;
        }
    }
    for (const auto& d : diffs) err << d << "\n";
    if (violated) return kObservationViolated;
    return diffs.empty() ? kOk : kTableMismatch;
}

int cmd_classgroup(const RunConfig& cfg, std::ostream& out) {
    auto f = FieldSpec::make(cfg.primes);
    ClassGroup cg(f);
    auto tt = two_torsion(cg);
    auto vec = [](const std::vector<i64>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    };
    std::string relation;
    for (std::size_t i = 0; i < f.r(); ++i) relation += (i ? "+" : "") + std::string("[p") + std::to_string(i + 1) + "]";
    relation += tt.relation_holds ? "=0" : "!=0";
    if (cfg.format == Format::json) {
        nlohmann::ordered_json js;
        js["primes"] = f.primes;
        js["d"] = f.d.get_si();
        js["class_number"] = cg.order();
        js["invariants"] = cg.invariants();
        js["two_rank"] = tt.two_rank;
        js["prime_classes"] = tt.prime_classes;
        js["relation"] = relation;
        js["genus_rank"] = tt.genus_rank;
        js["genus_theory_holds"] = tt.ok();
        out << js.dump(2) << "\n";
        return kOk;
    }
    out << "d:             " << f.d << "\n"
        << "class number:  " << cg.order() << "\n"
        << "invariants:    " << vec(cg.invariants()) << "\n"
        << "2-rank:        " << tt.two_rank << "\n";
    for (std::size_t i = 0; i < f.r(); ++i)
        out << "[p" << i + 1 << "] " << ramified_prime(f, i).to_string() << " -> " << vec(tt.prime_classes[i]) << "\n";
    out << relation << "\n"
        << "genus characters: rank " << tt.genus_rank << "\n";
    return kOk;
}

int cmd_linking(const RunConfig& cfg, std::ostream& out) {
    auto f = FieldSpec::make(cfg.primes);
    Etale X(f, etale_options(cfg));
    const bool sym = X.linking_symmetric();
    if (cfg.format == Format::json) {
        nlohmann::ordered_json js;
        js["primes"] = f.primes;
        js["rank"] = X.dim();
        js["matrix"] = X.linking_matrix();
        js["linking_symmetric"] = sym;
        out << js.dump(2) << "\n";
        return kOk;
    }
    if (X.dim() == 0) {
        out << "symmetric (vacuous, rank 0)\n";
        return kOk;
    }
    out << "L[i][j] = tr(x_i u x_j u x_j):\n";
    for (const auto& row : X.linking_matrix()) {
        out << " ";
        for (int v : row) out << " " << v;
        out << "\n";
    }
    out << linking_word(sym) << "\n";
    return kOk;
}

int cmd_selftest(const RunConfig& cfg, unsigned count, std::ostream& out, std::ostream& err) {
    unsigned failures = 0, checks = 0;
    auto q8 = q8_preset(), d4 = d4_preset();
    for (unsigned t = 0; t < count; ++t) {
        const std::uint64_t seed = cfg.seed * 1000003 + t;
        auto note = [&](bool ok, const std::string& what, const FieldSpec& f) {
            ++checks;
            if (!ok) {
                ++failures;
                err << "selftest failure: " << what << " at " << f.to_string() << " (seed " << seed << ")\n";
            }
        };
        auto f = random_field_spec(seed, 2 + t % 3, 10000000);
        ClassGroup cg(f);
        note(two_torsion(cg).ok(), "genus theory", f);
        Etale X(f, etale_options(cfg));
        for (const auto& R : X.tensor().routes()) note(R.agree(), "tensor routes", f);
        auto rd = duality_verdict(X, d4);
        note(!rd.observation_violated, "d4 equality", f);
        auto g = random_field_spec(seed ^ 0x9e3779b97f4a7c15ull, 2 + t % 3, 10000000, true);
        Etale Y(g, etale_options(cfg));
        auto rq = duality_verdict(Y, q8);
        note(rq.linking_symmetric && rq.hypotheses_hold && rq.equal, "symmetric linking and equality", g);
    }
    out << "selftest seed=" << cfg.seed << ": " << checks - failures << "/" << checks << " checks passed\n";
    return failures ? kInvalidInput : kOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dijkgraaf-Witten invariants of imaginary quadratic fields", "dw"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* sub, bool primes) {
        if (primes) sub->add_option("--primes", o.primes, "signed primes p = 1 mod 4, comma separated")->required();
        sub->add_option("--format", o.format, "text | json | csv");
        sub->add_option("--threads", o.threads, "OpenMP threads");
        sub->add_option("--aux-primes", o.aux, "auxiliary primes for the norm-equation descent");
        sub->add_option("--search", o.search, "norm equations: descent | box");
        sub->add_option("--box-cap", o.box_cap, "coefficient bound of the box search");
        sub->add_flag("-v,--verbose", o.verbose);
    };
    auto* compute_cmd = app.add_subcommand("compute", "both invariants, linking form and duality verdict");
    add_common(compute_cmd, true);
    compute_cmd->add_option("--group", o.group, "q8 | d4");
    compute_cmd->add_option("--cache-dir", o.cache_dir, "cache directory (overrides DW_CACHE_DIR)");
    compute_cmd->add_flag("--no-cache", o.no_cache);
    auto* table_cmd = app.add_subcommand("table", "the four reference fields");
    add_common(table_cmd, false);
    table_cmd->add_option("--group", o.group, "q8 | d4");
    table_cmd->add_option("--cache-dir", o.cache_dir, "cache directory (overrides DW_CACHE_DIR)");
    table_cmd->add_flag("--no-cache", o.no_cache);
    auto* cg_cmd = app.add_subcommand("classgroup", "class group and genus structure");
    add_common(cg_cmd, true);
    auto* link_cmd = app.add_subcommand("linking", "linking form matrix and symmetry");
    add_common(link_cmd, true);
    auto* self_cmd = app.add_subcommand("selftest", "randomized property checks");
    add_common(self_cmd, false);
    self_cmd->add_option("--seed", o.seed);
    self_cmd->add_option("--count", o.count);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        if (*compute_cmd) return cmd_compute(make_config(o, true), out);
        if (*table_cmd) return cmd_table(make_config(o, false), out, err);
        if (*cg_cmd) return cmd_classgroup(make_config(o, true), out);
        if (*link_cmd) return cmd_linking(make_config(o, true), out);
        if (*self_cmd) return cmd_selftest(make_config(o, false), o.count, out, err);
    } catch (const InvalidSpec& e) {
        err << e.what() << "\n";
        return kInvalidInput;
    } catch (const InputError& e) {
        err << e.what() << "\n";
        return kInvalidInput;
    } catch (const DiscriminantGuard& e) {
        err << e.what() << "\n";
        return kInvalidInput;
    } catch (const SearchExhausted& e) {
        err << e.what() << "\n";
        return kSearchExhausted;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 70;
    }
    return kInvalidInput;
}

}  // namespace dw::cli
