/*
 * ncrk command-line tool: a thin client of the C API. Reads an instance
 * JSON file, dispatches one operation, prints the result JSON to stdout or
 * a file. Exit code mirrors ncrk_status (0 ok, 1 verification failure,
 * 2 bad input, 3 resource limits, 4 internal).
 */

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ncrk/ncrk.h"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct InstGuard {
    ncrk_instance* p = nullptr;
    ~InstGuard() { ncrk_instance_free(p); }
};
struct ResGuard {
    ncrk_result* p = nullptr;
    ~ResGuard() { ncrk_result_free(p); }
};
struct StrGuard {
    char* p = nullptr;
    ~StrGuard() { ncrk_string_free(p); }
};

int load_instance(const std::string& path, InstGuard& inst) {
    StrGuard err;
    inst.p = ncrk_instance_parse(read_file(path).c_str(), &err.p);
    if (!inst.p) {
        std::cerr << "error: " << (err.p ? err.p : "instance parse failed") << "\n";
        return NCRK_EINPUT;
    }
    return NCRK_OK;
}

int run_and_print(const ncrk_instance* inst, const std::string& op, const std::string& options,
                  const std::string& out_path) {
    ResGuard res;
    StrGuard err;
    const ncrk_status st =
        ncrk_run(inst, op.c_str(), options.empty() ? nullptr : options.c_str(), &res.p, &err.p);
    if (st != NCRK_OK) {
        std::cerr << "error: " << (err.p ? err.p : "operation failed") << "\n";
        return st;
    }
    const char* text = ncrk_result_json(res.p);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return NCRK_EINPUT;
        }
        out << text;
    }
    return NCRK_OK;
}

// Assembles a flat JSON object from already-serialized key:value fragments.
std::string json_object(const std::vector<std::string>& fields) {
    std::string s = "{";
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) s += ",";
        s += fields[i];
    }
    return s + "}";
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact commutative/non-commutative rank of matrix spaces"};
    app.set_version_flag("--version", std::string(ncrk_version()));
    app.require_subcommand(1);

    std::string instance_path, out_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("instance", instance_path, "instance JSON file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("-o,--output", out_path, "write the result JSON here instead of stdout");
    };

    // rank
    auto* c_rank = app.add_subcommand("rank", "randomized commutative rank lower bound");
    unsigned rank_trials = 16;
    std::uint64_t rank_seed = 0;
    add_common(c_rank);
    c_rank->add_option("--trials", rank_trials, "random combinations to try");
    c_rank->add_option("--seed", rank_seed, "PRNG seed");

    // ncrank
    auto* c_nc = app.add_subcommand("ncrank", "exact non-commutative rank with witness");
    std::uint64_t nc_seed = 0;
    std::size_t nc_cap = 2000, nc_sample = 0;
    unsigned nc_init = 16, nc_spec_trials = 20;
    bool nc_det = false;
    add_common(c_nc);
    c_nc->add_option("--seed", nc_seed, "PRNG seed");
    c_nc->add_option("--cap-dim", nc_cap, "abort when a blow-up would exceed this dimension");
    c_nc->add_option("--init-trials", nc_init, "random starts for the initial element");
    c_nc->add_option("--sample-size", nc_sample, "scalar sample set size (0 = auto)");
    c_nc->add_option("--spec-trials", nc_spec_trials, "specialization trials per rank query");
    c_nc->add_flag("--deterministic", nc_det, "deterministic specialization grid (slow)");

    // wong
    auto* c_wong = app.add_subcommand("wong", "second Wong sequence from a pivot element");
    std::size_t wong_deg = 1;
    std::int64_t wong_idx = -1;
    std::string wong_coeffs;
    add_common(c_wong);
    c_wong->add_option("--degree", wong_deg, "blow-up degree");
    c_wong->add_option("--pivot-index", wong_idx, "index into the blow-up spanning elements");
    c_wong->add_option("--pivot-coeffs", wong_coeffs,
                       "comma-separated coefficients of the pivot element");

    // verify
    auto* c_ver = app.add_subcommand("verify", "check a witness/certificate JSON");
    std::string witness_path;
    c_ver->add_option("instance", instance_path, "instance JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    c_ver->add_option("witness", witness_path, "witness JSON file")
        ->required()
        ->check(CLI::ExistingFile);

    // bounds
    auto* c_bounds = app.add_subcommand("bounds", "worst-case blow-up/witness degree bounds");
    add_common(c_bounds);

    // nullcone
    auto* c_null = app.add_subcommand("nullcone", "randomized search for a nonsingular blow-up");
    std::size_t null_dmax = 2;
    unsigned null_trials = 24;
    std::uint64_t null_seed = 0;
    add_common(c_null);
    c_null->add_option("--d-max", null_dmax, "largest blow-up degree to try");
    c_null->add_option("--trials", null_trials, "random elements per degree");
    c_null->add_option("--seed", null_seed, "PRNG seed");

    // oracle
    auto* c_oracle = app.add_subcommand("oracle", "exhaustive reference answers (F_2/F_3 only)");
    std::size_t oracle_cap = 1u << 20;
    add_common(c_oracle);
    c_oracle->add_option("--combo-cap", oracle_cap, "max coefficient tuples for exhaustive rank");

    CLI11_PARSE(app, argc, argv);

    try {
        InstGuard inst;
        if (int rc = load_instance(instance_path, inst); rc != NCRK_OK) return rc;

        if (app.got_subcommand(c_rank)) {
            return run_and_print(inst.p, "rank",
                                 json_object({"\"trials\":" + std::to_string(rank_trials),
                                              "\"seed\":" + std::to_string(rank_seed)}),
                                 out_path);
        }
        if (app.got_subcommand(c_nc)) {
            return run_and_print(
                inst.p, "ncrank",
                json_object({"\"seed\":" + std::to_string(nc_seed),
                             "\"cap_dim\":" + std::to_string(nc_cap),
                             "\"init_trials\":" + std::to_string(nc_init),
                             "\"sample_size\":" + std::to_string(nc_sample),
                             "\"spec_trials\":" + std::to_string(nc_spec_trials),
                             std::string("\"deterministic\":") + (nc_det ? "true" : "false")}),
                out_path);
        }
        if (app.got_subcommand(c_wong)) {
            std::vector<std::string> fields = {"\"degree\":" + std::to_string(wong_deg)};
            if (!wong_coeffs.empty()) {
                std::string arr = "[";
                std::string cur;
                std::istringstream ss(wong_coeffs);
                bool first = true;
                while (std::getline(ss, cur, ',')) {
                    if (!first) arr += ",";
                    first = false;
                    arr += quote(cur);
                }
                fields.push_back("\"pivot_coeffs\":" + arr + "]");
            } else if (wong_idx >= 0) {
                fields.push_back("\"pivot_index\":" + std::to_string(wong_idx));
            }
            return run_and_print(inst.p, "wong", json_object(fields), out_path);
        }
        if (app.got_subcommand(c_ver)) {
            StrGuard err;
            const ncrk_status st =
                ncrk_verify(inst.p, read_file(witness_path).c_str(), &err.p);
            if (st == NCRK_OK) {
                std::cout << "witness OK\n";
                return 0;
            }
            std::cerr << (st == NCRK_EVERIFY ? "witness INVALID: " : "error: ")
                      << (err.p ? err.p : "verification failed") << "\n";
            return st;
        }
        if (app.got_subcommand(c_bounds)) return run_and_print(inst.p, "bounds", "", out_path);
        if (app.got_subcommand(c_null)) {
            return run_and_print(inst.p, "nullcone",
                                 json_object({"\"d_max\":" + std::to_string(null_dmax),
                                              "\"trials\":" + std::to_string(null_trials),
                                              "\"seed\":" + std::to_string(null_seed)}),
                                 out_path);
        }
        if (app.got_subcommand(c_oracle)) {
            return run_and_print(inst.p, "oracle",
                                 json_object({"\"combo_cap\":" + std::to_string(oracle_cap)}),
                                 out_path);
        }
        std::cerr << "error: no subcommand\n";
        return NCRK_EINPUT;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return NCRK_EINPUT;
    }
}
