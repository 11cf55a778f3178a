// Command line interface: every subcommand prints machine-readable JSON
// (CSV for the asymptotics table) with exact integers and fractions only.
// Exit codes: 0 success, 1 a verification found failures, 2 usage or
// input errors (including enumeration budget), 3 internal arithmetic bug.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "constel/constel.hpp"

using json = nlohmann::ordered_json;
using namespace constel;

namespace {

json json_int(const Int& v) {
    if (fits_int64(v)) return json(to_int64(v));
    return json(v.get_str());  // decimal string keeps the value exact
}

json json_partition(const Partition& p) {
    json a = json::array();
    for (int part : p.parts()) a.push_back(part);
    return a;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string token = text.substr(pos, next - pos);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(token, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != token.size())
            throw std::invalid_argument(std::string(what) + ": bad entry \"" + token + "\"");
        out.push_back(v);
        pos = next + 1;
    }
    return out;
}

std::optional<std::set<int>> parse_degrees(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::set<int> degrees;
    for (int d : parse_int_list(text, "--degrees")) {
        if (d < 1) throw std::invalid_argument("--degrees: entries must be >= 1");
        degrees.insert(d);
    }
    return degrees;
}

json census_to_json(const Census& census) {
    json rows = json::array();
    for (const auto& [key, count] : census) {
        json row;
        row["genus"] = key.genus;
        row["mu"] = json_partition(key.mu);
        row["colors"] = key.colors;
        row["count"] = json_int(count);
        rows.push_back(std::move(row));
    }
    return rows;
}

struct Output {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::invalid_argument("cannot open output file " + path);
        file << text;
    }
};

// Optional on-disk character memo table, pointed at by CONSTEL_CHI_CACHE.
class ChiCacheGuard {
public:
    ChiCacheGuard() {
        const char* dir = std::getenv("CONSTEL_CHI_CACHE");
        if (!dir || !*dir) return;
        path_ = std::filesystem::path(dir) / "chi-table.bin";
        std::ifstream in(path_, std::ios::binary);
        if (in) global_char_table().load(in);
    }

    void persist() const {
        if (path_.empty()) return;
        std::error_code ec;
        std::filesystem::create_directories(path_.parent_path(), ec);
        std::ofstream out(path_, std::ios::binary);
        if (out) global_char_table().save(out);
    }

private:
    std::filesystem::path path_;
};

int run(int argc, char** argv) {
    CLI::App app{"exact enumeration of m-hypermaps and m-constellations"};
    app.require_subcommand(1);

    unsigned threads = 0;
    std::string output_path;
    app.add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--output", output_path, "write the result to a file instead of stdout");

    // chi
    auto* chi_cmd = app.add_subcommand("chi", "irreducible character value");
    std::string chi_lambda, chi_mu;
    chi_cmd->add_option("--lambda", chi_lambda, "shape partition")->required();
    chi_cmd->add_option("--mu", chi_mu, "content partition")->required();

    // frobenius
    auto* frob_cmd = app.add_subcommand("frobenius", "factorization count with fixed class product");
    std::string frob_alpha;
    std::vector<std::string> frob_betas;
    frob_cmd->add_option("--alpha", frob_alpha, "cycle type of the fixed permutation")->required();
    frob_cmd->add_option("--beta", frob_betas, "cycle type of one factor (repeatable)")->required();

    // split
    auto* split_cmd = app.add_subcommand("split", "residue-class decomposition of a partition");
    std::string split_theta;
    int split_m = 2;
    split_cmd->add_option("--theta", split_theta, "partition to split")->required();
    split_cmd->add_option("--m", split_m, "modulus")->required()->check(CLI::Range(2, 64));

    // coeffs
    auto* coeffs_cmd = app.add_subcommand("coeffs", "relation coefficient table");
    int coeffs_m = 2, coeffs_order = 2;
    coeffs_cmd->add_option("--m", coeffs_m, "number of colors")->required()->check(CLI::Range(2, 16));
    coeffs_cmd->add_option("--order", coeffs_order, "maximum total index")->required()
        ->check(CLI::Range(0, 32));

    // count
    auto* count_cmd = app.add_subcommand("count", "character-based rooted map count");
    std::string count_kind, count_degrees, count_marks;
    int count_m = 2, count_n = 1, count_genus = 0;
    bool count_export = false;
    count_cmd->add_option("--kind", count_kind, "hypermap or constellation")->required()
        ->check(CLI::IsMember({"hypermap", "constellation"}));
    count_cmd->add_option("--m", count_m, "number of colors")->required()->check(CLI::Range(2, 16));
    count_cmd->add_option("--n", count_n, "hyperedge count")->required()->check(CLI::Range(1, 64));
    count_cmd->add_option("--genus", count_genus, "genus")->required()->check(CLI::Range(0, 64));
    count_cmd->add_option("--degrees", count_degrees, "allowed hyperface degree factors d (degree md)");
    count_cmd->add_option("--marks", count_marks, "marked vertices per color, k1,...,k_{m-1}");
    count_cmd->add_flag("--export", count_export, "emit the full rooted census instead of one count");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force census by exhaustive enumeration");
    std::string oracle_kind;
    int oracle_m = 2, oracle_n = 1;
    oracle_cmd->add_option("--kind", oracle_kind, "hypermap or constellation")->required()
        ->check(CLI::IsMember({"hypermap", "constellation"}));
    oracle_cmd->add_option("--m", oracle_m, "number of colors")->required()->check(CLI::Range(2, 16));
    oracle_cmd->add_option("--n", oracle_n, "hyperedge count")->required()->check(CLI::Range(1, 64));

    // verify littlewood | relation
    auto* verify_cmd = app.add_subcommand("verify", "machine verification sweeps");
    verify_cmd->require_subcommand(1);
    auto* vl_cmd = verify_cmd->add_subcommand("littlewood", "character factorization sweep");
    int vl_m = 2, vl_max_size = 6;
    vl_cmd->add_option("--m", vl_m, "modulus")->required()->check(CLI::Range(2, 16));
    vl_cmd->add_option("--max-size", vl_max_size, "largest |theta| checked")->required()
        ->check(CLI::Range(1, 32));
    auto* vr_cmd = verify_cmd->add_subcommand("relation", "hypermap/constellation relation sweep");
    int vr_m = 2, vr_n_max = 3, vr_g_max = 1;
    std::string vr_degrees;
    vr_cmd->add_option("--m", vr_m, "number of colors")->required()->check(CLI::Range(2, 16));
    vr_cmd->add_option("--n-max", vr_n_max, "largest hyperedge count")->required()
        ->check(CLI::Range(1, 64));
    vr_cmd->add_option("--g-max", vr_g_max, "largest genus")->required()->check(CLI::Range(0, 64));
    vr_cmd->add_option("--degrees", vr_degrees, "allowed hyperface degree factors");

    // asymptotics
    auto* asym_cmd = app.add_subcommand("asymptotics", "exact H/(m^2g C) ratio table");
    int asym_m = 2, asym_g = 1;
    std::string asym_ns;
    asym_cmd->add_option("--m", asym_m, "number of colors")->required()->check(CLI::Range(2, 16));
    asym_cmd->add_option("--g", asym_g, "genus")->required()->check(CLI::Range(0, 64));
    asym_cmd->add_option("--n", asym_ns, "comma-separated hyperedge counts")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit clean, usage errors exit 2
    }

    ChiCacheGuard cache;
    Output out{output_path};
    int exit_code = 0;

    if (chi_cmd->parsed()) {
        const Partition lam = Partition::parse(chi_lambda);
        const Partition mu = Partition::parse(chi_mu);
        json result;
        result["value"] = json_int(chi(lam, mu));
        out.write(result.dump() + "\n");
    } else if (frob_cmd->parsed()) {
        const Partition alpha = Partition::parse(frob_alpha);
        std::vector<Partition> betas;
        for (const std::string& b : frob_betas) betas.push_back(Partition::parse(b));
        json result;
        result["value"] = json_int(frobenius_count(alpha, betas));
        out.write(result.dump() + "\n");
    } else if (split_cmd->parsed()) {
        const Partition theta = Partition::parse(split_theta);
        const auto split = m_split(theta, split_m);
        json result;
        result["splittable"] = split.has_value();
        if (split) {
            json comps = json::array();
            for (const Partition& c : *split) comps.push_back(json_partition(c));
            result["components"] = std::move(comps);
            result["sign"] = sign_theta(theta, split_m);
        }
        out.write(result.dump() + "\n");
    } else if (coeffs_cmd->parsed()) {
        json rows = json::array();
        for (int total = 0; total <= coeffs_order; ++total)
            for (const std::vector<int>& ks : mark_vectors(coeffs_m - 1, total)) {
                json row;
                row["ks"] = ks;
                json es = json::array();
                for (int j = 1; j <= coeffs_m; ++j) es.push_back(json_int(e_coeff(coeffs_m, j, ks)));
                row["e"] = std::move(es);
                row["d"] = json_int(d_coeff(coeffs_m, ks));
                row["c"] = json_int(c_coeff(coeffs_m, ks));
                rows.push_back(std::move(row));
            }
        out.write(rows.dump() + "\n");
    } else if (count_cmd->parsed()) {
        const MapKind kind =
            count_kind == "hypermap" ? MapKind::hypermap : MapKind::constellation;
        CountQuery query{count_m, count_n, count_genus, parse_degrees(count_degrees), {}};
        if (!count_marks.empty()) {
            query.marks = parse_int_list(count_marks, "--marks");
            if (kind == MapKind::hypermap)
                throw std::invalid_argument("--marks applies to constellations only");
            if (static_cast<int>(query.marks.size()) > count_m - 1)
                throw std::invalid_argument("--marks takes at most m-1 entries");
        }
        const CensusBundle bundle = build_census(kind, count_m, count_n, threads);
        if (count_export) {
            out.write(census_to_json(bundle.rooted).dump() + "\n");
        } else {
            const Int count = kind == MapKind::hypermap ? count_hypermaps(bundle, query)
                                                        : count_constellations(bundle, query);
            json result;
            json jq;
            jq["kind"] = count_kind;
            jq["m"] = count_m;
            jq["n"] = count_n;
            jq["genus"] = count_genus;
            if (query.degrees) jq["degrees"] = std::vector<int>(query.degrees->begin(), query.degrees->end());
            if (!query.marks.empty()) jq["marks"] = query.marks;
            result["query"] = std::move(jq);
            result["count"] = json_int(count);
            out.write(result.dump() + "\n");
        }
    } else if (oracle_cmd->parsed()) {
        const CensusBundle bundle = oracle_kind == "hypermap"
                                        ? brute_hypermaps(oracle_n, oracle_m, threads)
                                        : brute_constellations(oracle_n, oracle_m, threads);
        out.write(census_to_json(bundle.rooted).dump() + "\n");
    } else if (vl_cmd->parsed()) {
        const LittlewoodReport report = verify_littlewood(vl_max_size, vl_m, threads);
        json result;
        result["checked"] = report.checked;
        json failures = json::array();
        for (const LittlewoodFailure& f : report.failures) {
            json row;
            row["theta"] = json_partition(f.theta);
            row["lambda"] = json_partition(f.lam);
            row["chi"] = json_int(f.lhs);
            row["factorized"] = json_int(f.rhs);
            failures.push_back(std::move(row));
        }
        result["failures"] = std::move(failures);
        out.write(result.dump() + "\n");
        if (!report.ok()) exit_code = 1;
    } else if (vr_cmd->parsed()) {
        const auto degrees = parse_degrees(vr_degrees);
        const CensusBundle cons = build_census(MapKind::constellation, vr_m, vr_n_max, threads);
        const CensusBundle hyp = build_census(MapKind::hypermap, vr_m, vr_n_max, threads);
        const RelationReport report = verify_relation(hyp, cons, vr_n_max, vr_m, vr_g_max, degrees);
        json result;
        result["cases"] = report.cases;
        json failures = json::array();
        for (const RelationFailure& f : report.failures) {
            json row;
            row["n"] = f.n;
            row["genus"] = f.genus;
            row["hypermaps"] = json_int(f.hypermaps);
            row["rhs"] = json_int(f.rhs);
            failures.push_back(std::move(row));
        }
        result["failures"] = std::move(failures);
        out.write(result.dump() + "\n");
        if (!report.ok()) exit_code = 1;
    } else if (asym_cmd->parsed()) {
        const std::vector<int> ns = parse_int_list(asym_ns, "--n");
        if (ns.empty()) throw std::invalid_argument("--n: need at least one value");
        int n_max = 1;
        for (int n : ns) {
            if (n < 1) throw std::invalid_argument("--n: entries must be >= 1");
            n_max = std::max(n_max, n);
        }
        const CensusBundle cons = build_census(MapKind::constellation, asym_m, n_max, threads);
        const CensusBundle hyp = build_census(MapKind::hypermap, asym_m, n_max, threads);
        std::ostringstream csv;
        csv << "n,numerator,denominator\n";
        for (const AsymptoticRow& row : asymptotic_table(hyp, cons, asym_m, asym_g, {}, ns))
            csv << row.n << "," << row.ratio.get_num().get_str() << ","
                << row.ratio.get_den().get_str() << "\n";
        out.write(csv.str());
    }

    cache.persist();
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
