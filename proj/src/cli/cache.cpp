#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "dw/cli.hpp"
#include "json.hpp"

namespace dw::cli {

using nlohmann::json;

Cache::Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path Cache::path_for(const FieldSpec& f) const {
    mpz_class a = abs(f.d);
    return dir_ / ("d" + a.get_str() + ".json");
}

std::optional<CacheEntry> Cache::load(const FieldSpec& f) const {
    std::ifstream in(path_for(f));
    if (!in) return std::nullopt;
    json js;
    try {
        js = json::parse(in);
        if (js.value("format", "") != "dw-cache" || js.value("schema", 0) != kCacheSchema) return std::nullopt;
        CacheEntry e;
        e.d = mpz_class(js.at("d").get<std::string>());
        e.primes = js.at("primes").get<std::vector<long>>();
        if (e.d != f.d || e.primes != f.primes) return std::nullopt;
        const auto& cg = js.at("class_group");
        e.class_number = cg.at("order").get<std::size_t>();
        e.invariants = cg.at("invariants").get<std::vector<i64>>();
        e.two_rank = cg.at("two_rank").get<unsigned>();
        e.relation_holds = cg.at("relation_holds").get<bool>();
        e.prime_classes = cg.at("prime_classes").get<std::vector<std::vector<i64>>>();
        e.tensor = js.at("tensor").get<std::vector<std::uint8_t>>();
        e.witnesses = js.at("witnesses").get<std::vector<std::string>>();
        return e;
    } catch (const json::exception&) {
        return std::nullopt;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

void Cache::store(const CacheEntry& e) const {
    json js;
    js["format"] = "dw-cache";
    js["schema"] = kCacheSchema;
    js["d"] = e.d.get_str();
    js["primes"] = e.primes;
    js["class_group"] = {{"order", e.class_number},
                         {"invariants", e.invariants},
                         {"two_rank", e.two_rank},
                         {"relation_holds", e.relation_holds},
                         {"prime_classes", e.prime_classes}};
    js["tensor"] = e.tensor;
    js["witnesses"] = e.witnesses;
    std::filesystem::create_directories(dir_);
    mpz_class a = abs(e.d);
    std::random_device rd;
    auto tmp = dir_ / ("d" + a.get_str() + ".json.tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
        out << js.dump(1) << "\n";
        if (!out) throw std::runtime_error("cache: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, dir_ / ("d" + a.get_str() + ".json"));
}

std::optional<std::filesystem::path> resolve_cache_dir(const std::optional<std::filesystem::path>& flag) {
    if (flag) return flag->empty() ? std::nullopt : flag;
    if (const char* env = std::getenv("DW_CACHE_DIR"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

CacheEntry make_cache_entry(const FieldSpec& f, const ClassGroup& cg, const TraceTensor& T) {
    CacheEntry e;
    e.d = f.d;
    e.primes = f.primes;
    e.class_number = cg.order();
    e.invariants = cg.invariants();
    auto tt = two_torsion(cg);
    e.two_rank = tt.two_rank;
    e.relation_holds = tt.relation_holds;
    e.prime_classes = tt.prime_classes;
    e.tensor = T.entries();
    for (const auto& R : T.routes()) {
        std::ostringstream os;
        os << R.idx[0] << R.idx[1] << R.idx[2] << ":";
        for (std::size_t i = 0; i < R.first_witness.size(); ++i) os << (i ? ";" : "") << R.first_witness[i];
        e.witnesses.push_back(os.str());
    }
    return e;
}

}  // namespace dw::cli
