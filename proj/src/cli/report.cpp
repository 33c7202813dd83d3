#include <algorithm>
#include <chrono>
#include <sstream>

#include "dw/cli.hpp"
#include "json.hpp"

namespace dw::cli {

using nlohmann::ordered_json;

std::string rational_string(const mpq_class& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

std::string decimal_string(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    // six places, trailing zeros dropped
    mpz_class scaled = abs(q.get_num()) * 1000000 / q.get_den();
    std::string s = scaled.get_str();
    if (s.size() < 7) s = std::string(7 - s.size(), '0') + s;
    std::string ip = s.substr(0, s.size() - 6), fp = s.substr(s.size() - 6);
    while (!fp.empty() && fp.back() == '0') fp.pop_back();
    return (q < 0 ? "-" : "") + ip + (fp.empty() ? "" : "." + fp);
}

std::string linking_word(bool symmetric) {
    return symmetric ? "symmetric" : "non-symmetric";
}

std::string primes_string(const std::vector<long>& primes) {
    std::string s;
    for (std::size_t i = 0; i < primes.size(); ++i) s += (i ? "," : "") + std::to_string(primes[i]);
    return s;
}

std::string render_json(const ComputeResult& r, bool with_timings) {
    const auto& R = r.report;
    ordered_json js;
    js["primes"] = R.spec.primes;
    js["d"] = R.spec.d.get_si();
    js["group"] = R.group;
    js["z_omega"] = rational_string(R.z_omega);
    js["z_omega_hat"] = rational_string(R.z_omega_hat);
    js["equal"] = R.equal;
    js["linking_symmetric"] = R.linking_symmetric;
    js["linking"] = linking_word(R.linking_symmetric);
    js["hypotheses_hold"] = R.hypotheses_hold;
    js["torsor_count"] = R.torsor_count.get_si();
    if (R.observation_checked) js["observation_violated"] = R.observation_violated;
    if (with_timings)
        js["timings_ms"] = {{"class_group", r.timings.class_group_ms},
                            {"tensor", r.timings.tensor_ms},
                            {"invariants", r.timings.invariants_ms},
                            {"total", r.timings.total_ms}};
    return js.dump(2);
}

std::string render_text(const ComputeResult& r) {
    const auto& R = r.report;
    std::ostringstream os;
    os << "primes:        " << primes_string(R.spec.primes) << "\n"
       << "d:             " << R.spec.d << "\n"
       << "group:         " << R.group << "\n"
       << "Z^omega:       " << rational_string(R.z_omega) << " (" << decimal_string(R.z_omega) << ")\n"
       << "Z^omega_hat:   " << rational_string(R.z_omega_hat) << " (" << decimal_string(R.z_omega_hat) << ")\n"
       << "equal:         " << (R.equal ? "yes" : "no") << "\n"
       << "linking:       " << linking_word(R.linking_symmetric) << "\n"
       << "hypotheses:    " << (R.hypotheses_hold ? "hold" : "fail");
    if (!R.hypotheses_hold)
        os << " (" << R.hypothesis_failures << " of " << R.sigma_vanishes.size()
           << " homomorphisms pull gamma back into H1-perp)";
    os << "\n"
       << "torsor count:  " << R.torsor_count << "\n";
    if (R.observation_checked)
        os << "observation:   " << (R.observation_violated ? "paper-observation violated" : "equality holds") << "\n";
    return os.str();
}

std::string csv_header() {
    return "primes,z_omega,z_omega_hat,linking";
}

std::string csv_row(const InvariantReport& r) {
    return "\"" + primes_string(r.spec.primes) + "\"," + rational_string(r.z_omega) + "," +
           rational_string(r.z_omega_hat) + "," + linking_word(r.linking_symmetric);
}

const std::vector<TableRow>& golden_table() {
    static const std::vector<TableRow> rows = {
        {{-11, -83, -107, -139, -191}, "8", "8", false},
        {{29, -31, -43, -47, 101}, "8", "20", false},
        {{-11, -59, -107}, "1/2", "7/2", false},
        {{5, 193, -439}, "1/2", "1/2", true},
    };
    return rows;
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

EtaleOptions etale_options(const RunConfig& cfg) {
    EtaleOptions opt;
    if (cfg.aux_primes) opt.search.aux_primes = *cfg.aux_primes;
    opt.search.route = cfg.route;
    if (cfg.box_cap) {
        opt.search.box_cap = *cfg.box_cap;
        opt.search.box_start = std::min(opt.search.box_start, *cfg.box_cap);
    }
    return opt;
}

ComputeResult compute(const FieldSpec& f, const DualityPreset& preset, const RunConfig& cfg) {
    ComputeResult res;
    const auto t0 = std::chrono::steady_clock::now();
    Etale X(f, etale_options(cfg));
    std::optional<Cache> cache;
    if (auto dir = resolve_cache_dir(cfg.cache_dir)) cache.emplace(*dir);
    std::optional<CacheEntry> hit;
    if (cache) hit = cache->load(f);
    if (hit) {
        try {
            X.tensor().load(hit->tensor);
            res.cache_hit = true;
        } catch (const std::invalid_argument&) {
            hit.reset();
        }
    }
    if (!hit) {
        auto t1 = std::chrono::steady_clock::now();
        (void)X.tensor().entries();
        res.timings.tensor_ms = ms_since(t1);
        if (cache) {
            t1 = std::chrono::steady_clock::now();
            ClassGroup cg(f);
            res.timings.class_group_ms = ms_since(t1);
            cache->store(make_cache_entry(f, cg, X.tensor()));
        }
    }
    const auto t2 = std::chrono::steady_clock::now();
    res.report = duality_verdict(X, preset);
    res.timings.invariants_ms = ms_since(t2);
    res.timings.total_ms = ms_since(t0);
    return res;
}

}  // namespace dw::cli
