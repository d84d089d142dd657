/*
 * C API implementation. Parses instances into typed matrix spaces, runs the
 * requested operation through a field-variant dispatch, and serializes
 * results as deterministic JSON (ordered keys, elements as decimal strings).
 */

#include "ncrk/ncrk.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ncrk/errors.hpp"
#include "ncrk/fields.hpp"
#include "ncrk/matrix_space.hpp"
#include "ncrk/oracle.hpp"
#include "ncrk/solver.hpp"
#include "ncrk/version.hpp"
#include "ncrk/wong.hpp"

using json = nlohmann::ordered_json;
using namespace ncrk;

namespace {

ncrk_status status_of(errc k) {
    switch (k) {
        case errc::invalid_input:
        case errc::division_by_zero: return NCRK_EINPUT;
        case errc::field_too_small:
        case errc::unsupported_char:
        case errc::unsupported_op:
        case errc::too_large: return NCRK_ERESOURCE;
        case errc::invalid_witness: return NCRK_EVERIFY;
        case errc::internal: return NCRK_EINTERNAL;
    }
    return NCRK_EINTERNAL;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_err(char** err, const std::string& msg) {
    if (err) *err = dup_string(msg);
}

template <class F>
struct Instance {
    F K;
    MatrixSpace<F> sp;
};

std::string elem_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    fail(errc::invalid_input, "matrix entry must be an integer or a string");
}

template <class F>
MatrixSpace<F> parse_space(const F& K, const json& doc) {
    require(doc.contains("n") && doc["n"].is_number_unsigned(), errc::invalid_input,
            "instance needs an unsigned \"n\"");
    const std::size_t n = doc["n"].get<std::size_t>();
    require(n >= 1 && n <= 64, errc::invalid_input, "instance size n out of range [1, 64]");
    require(doc.contains("matrices") && doc["matrices"].is_array() && !doc["matrices"].empty(),
            errc::invalid_input, "instance needs a nonempty \"matrices\" array");
    std::vector<Mat<F>> basis;
    for (const auto& mj : doc["matrices"]) {
        require(mj.is_array() && mj.size() == n, errc::invalid_input,
                "each matrix must have n rows");
        Mat<F> B = make_mat(K, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            require(mj[i].is_array() && mj[i].size() == n, errc::invalid_input,
                    "each matrix row must have n entries");
            for (std::size_t j2 = 0; j2 < n; ++j2) B.at(i, j2) = parse_elem(K, elem_text(mj[i][j2]));
        }
        basis.push_back(std::move(B));
    }
    return make_space(K, n, std::move(basis));
}

// ------------------------------------------------------------ serialization

template <class F>
json vec_out(const F& K, const std::vector<typename F::Elem>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(K.to_string(e));
    return a;
}

template <class F>
json basis_out(const F& K, const Subspace<F>& s) {
    json a = json::array();
    for (std::size_t j = 0; j < s.basis.cols; ++j) {
        json col = json::array();
        for (std::size_t i = 0; i < s.basis.rows; ++i) col.push_back(K.to_string(s.basis.at(i, j)));
        a.push_back(std::move(col));
    }
    return a;
}

template <class F>
json witness_out(const F& K, const ShrunkWitness<F>& w, std::size_t degree) {
    json j;
    j["type"] = "shrunk";
    j["degree"] = degree;
    j["c"] = w.c;
    j["U"] = basis_out(K, w.U);
    j["W"] = basis_out(K, w.W);
    return j;
}

template <class F>
json certificate_out(const F& K, std::size_t degree, std::size_t rank_value,
                     const std::vector<typename F::Elem>& coeffs) {
    json j;
    j["type"] = "full_rank";
    j["degree"] = degree;
    j["rank"] = rank_value;
    j["coeffs"] = vec_out(K, coeffs);
    return j;
}

template <class F>
std::vector<typename F::Elem> vec_in(const F& K, const json& a, std::size_t len,
                                     const char* what) {
    require(a.is_array() && a.size() == len, errc::invalid_input,
            std::string(what) + " has the wrong length");
    std::vector<typename F::Elem> v;
    v.reserve(len);
    for (const auto& e : a) v.push_back(parse_elem(K, elem_text(e)));
    return v;
}

template <class F>
Subspace<F> subspace_in(const F& K, const json& a, std::size_t ambient, const char* what) {
    require(a.is_array(), errc::invalid_input, std::string(what) + " must be a vector array");
    Mat<F> cols = make_mat(K, ambient, a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        auto v = vec_in(K, a[j], ambient, what);
        for (std::size_t i = 0; i < ambient; ++i) cols.at(i, j) = std::move(v[i]);
    }
    return subspace_span(K, cols);
}

// ----------------------------------------------------------------- options

json parse_options(const char* options_json) {
    if (options_json == nullptr || *options_json == '\0') return json::object();
    json opts;
    try {
        opts = json::parse(options_json);
    } catch (const json::exception& e) {
        fail(errc::invalid_input, std::string("malformed options JSON: ") + e.what());
    }
    require(opts.is_object(), errc::invalid_input, "options must be a JSON object");
    return opts;
}

template <class T>
T opt_get(const json& opts, const char* key, T fallback) {
    if (!opts.contains(key)) return fallback;
    try {
        return opts[key].get<T>();
    } catch (const json::exception&) {
        fail(errc::invalid_input, std::string("option \"") + key + "\" has the wrong type");
    }
}

// --------------------------------------------------------------- operations

template <class F>
json header_json(const F&, const MatrixSpace<F>& sp, const std::string& field,
                 const std::string& op) {
    json j;
    j["version"] = NCRK_VERSION_STRING;
    j["op"] = op;
    j["field"] = field;
    j["n"] = sp.n;
    j["m"] = sp.basis.size();
    return j;
}

template <class F>
json run_rank(const F& K, const MatrixSpace<F>& sp, const json& opts) {
    EstimateCfg cfg;
    cfg.trials = opt_get<unsigned>(opts, "trials", 16);
    cfg.seed = opt_get<std::uint64_t>(opts, "seed", 0);
    const auto est = commutative_rank_estimate(K, sp, cfg);
    json j;
    j["rank_lower_bound"] = est.value;
    j["coeffs"] = vec_out(K, est.best_coeffs);
    j["trials"] = est.trials;
    j["failure_bound"] = est.failure_bound;
    j["field_small"] = est.field_small;
    return j;
}

template <class F>
json run_ncrank(const F& K, const MatrixSpace<F>& sp, const json& opts) {
    SolverCfg cfg;
    cfg.seed = opt_get<std::uint64_t>(opts, "seed", 0);
    cfg.init_trials = opt_get<unsigned>(opts, "init_trials", 16);
    cfg.cap_dim = opt_get<std::size_t>(opts, "cap_dim", 2000);
    cfg.sample_size = opt_get<std::size_t>(opts, "sample_size", 0);
    cfg.spec.deterministic = opt_get<bool>(opts, "deterministic", false);
    cfg.spec.trials = opt_get<unsigned>(opts, "spec_trials", 20);
    cfg.spec.seed = cfg.seed ^ 0x5bd1e995u;
    const auto res = ncrk_main(K, sp, cfg);

    json j;
    j["ncrk"] = res.ncrk;
    j["partial"] = res.partial;
    j["starting_rank"] = res.starting_rank;
    json trace = json::array();
    for (const auto& [deg, rk] : res.trace) trace.push_back(json::array({deg, rk}));
    j["trace"] = trace;
    j["wong_stages"] = res.wong_stages;
    j["witness"] = res.has_witness ? witness_out(K, res.witness, std::size_t{1}) : json();
    j["certificate"] = res.cert_degree > 0
                           ? certificate_out(K, res.cert_degree, res.cert_rank, res.cert_coeffs)
                           : json();
    j["lower_bound"] = res.ncrk;
    j["upper_bound"] = res.partial ? sp.n : res.ncrk;
    return j;
}

template <class F>
json run_wong(const F& K, const MatrixSpace<F>& sp, const json& opts) {
    const std::size_t d = opt_get<std::size_t>(opts, "degree", 1);
    require(d >= 1 && sp.n * d <= 4096, errc::too_large, "wong blow-up degree out of range");
    const auto bu = blowup_space(sp, d);
    const auto spanning = spanning_matrices(K, bu);

    Mat<F> A = make_mat(K, sp.n * d, sp.n * d);
    if (opts.contains("pivot_coeffs")) {
        auto coeffs =
            vec_in(K, opts["pivot_coeffs"], sp.basis.size() * d * d, "pivot_coeffs");
        A = blowup_element(K, bu, coeffs);
    } else {
        const std::size_t idx = opt_get<std::size_t>(opts, "pivot_index", 0);
        require(idx < spanning.size(), errc::invalid_input, "pivot_index out of range");
        A = spanning[idx];
    }

    const auto res = second_wong(K, spanning, A);
    json j;
    j["degree"] = d;
    j["pivot_rank"] = rank(K, A);
    j["stage_dims"] = res.stage_dims;
    j["contained"] = res.contained;
    if (res.contained) {
        j["gap"] = res.gap;
        j["escape_index"] = json();
        if (res.gap >= 1) {
            const auto blow_sp = make_space(K, sp.n * d, spanning);
            const auto w = make_shrunk_witness(K, blow_sp, res.witness,
                                               apply_mats(K, spanning, res.witness), res.gap);
            j["witness"] = witness_out(K, w, d);
        } else {
            j["witness"] = json();
        }
    } else {
        j["gap"] = json();
        j["escape_index"] = *res.escape_index;
        j["witness"] = json();
    }
    return j;
}

template <class F>
json run_bounds(const F&, const MatrixSpace<F>& sp, const json&) {
    const auto b = degree_bounds(sp.n, sp.basis.size());
    json j;
    j["blowup_degree_factorial"] = b.sigma_factorial.get_str();
    j["blowup_degree_exponential"] = b.sigma_exponential.get_str();
    j["witness_degree_factorial"] = b.beta_factorial.get_str();
    j["witness_degree_exponential"] = b.beta_exponential.get_str();
    return j;
}

template <class F>
json run_nullcone(const F& K, const MatrixSpace<F>& sp, const json& opts) {
    NullconeCfg cfg;
    cfg.d_max = opt_get<std::size_t>(opts, "d_max", 2);
    cfg.trials = opt_get<unsigned>(opts, "trials", 24);
    cfg.seed = opt_get<std::uint64_t>(opts, "seed", 0);
    require(cfg.d_max >= 1 && sp.n * cfg.d_max <= 4096, errc::too_large,
            "nullcone blow-up degree out of range");
    const auto rep = nullcone_test(K, sp, cfg);
    json j;
    j["nonsingular_found"] = rep.nonsingular_found;
    j["definitive"] = rep.definitive;
    j["certificate"] = rep.nonsingular_found
                           ? certificate_out(K, rep.cert_degree, sp.n * rep.cert_degree,
                                             rep.cert_coeffs)
                           : json();
    j["miss_bound"] = rep.miss_bound;
    j["d_max"] = cfg.d_max;
    j["trials"] = cfg.trials;
    return j;
}

// Exhaustive reference computation, only available over F_2 and F_3.
template <class F>
json run_oracle(const F& K, const MatrixSpace<F>& sp, const json& opts) {
    if constexpr (!std::is_same_v<F, Fp>) {
        (void)K;
        (void)sp;
        (void)opts;
        fail(errc::too_large, "oracle requires a prime field of size at most 3");
    } else {
        require(K.p <= 3, errc::too_large, "oracle requires a prime field of size at most 3");
        const auto elems = sample_set(K, K.p);
        const auto search = enumerate_shrunk(K, sp, elems);
        const std::size_t combo_cap = opt_get<std::size_t>(opts, "combo_cap", 1u << 20);
        json j;
        j["ncrk_exhaustive"] = sp.n - search.best_c;
        j["best_c"] = search.best_c;
        j["subspaces_checked"] = search.subspaces_checked;
        if (search.best_c > 0) {
            const auto w = make_shrunk_witness(K, sp, search.U, search.W, search.best_c);
            j["witness"] = witness_out(K, w, std::size_t{1});
        } else {
            j["witness"] = json();
        }
        j["commutative_rank_exhaustive"] = exhaustive_rank(K, sp.basis, elems, combo_cap);
        return j;
    }
}

template <class F>
json run_op(const F& K, const MatrixSpace<F>& sp, const std::string& field, const std::string& op,
            const json& opts) {
    json j = header_json(K, sp, field, op);
    json payload;
    if (op == "rank")
        payload = run_rank(K, sp, opts);
    else if (op == "ncrank")
        payload = run_ncrank(K, sp, opts);
    else if (op == "wong")
        payload = run_wong(K, sp, opts);
    else if (op == "bounds")
        payload = run_bounds(K, sp, opts);
    else if (op == "nullcone")
        payload = run_nullcone(K, sp, opts);
    else if (op == "oracle")
        payload = run_oracle(K, sp, opts);
    else
        fail(errc::invalid_input, "unknown operation: " + op);
    for (auto& [k, v] : payload.items()) j[k] = std::move(v);
    return j;
}

// ------------------------------------------------------------- verification

template <class F>
void verify_doc(const F& K, const MatrixSpace<F>& sp, const json& doc) {
    require(doc.is_object() && doc.contains("type") && doc["type"].is_string(),
            errc::invalid_input, "witness document needs a \"type\"");
    const std::string type = doc["type"].get<std::string>();
    const std::size_t d = doc.contains("degree") ? doc["degree"].get<std::size_t>() : 1;
    require(d >= 1 && sp.n * d <= 4096, errc::too_large, "witness degree out of range");

    if (type == "shrunk") {
        require(doc.contains("c") && doc["c"].is_number_unsigned(), errc::invalid_input,
                "shrunk witness needs an unsigned \"c\"");
        const std::size_t c = doc["c"].get<std::size_t>();
        const std::size_t ambient = sp.n * d;
        const auto U = subspace_in(K, doc.value("U", json::array()), ambient, "witness U");
        const auto W = subspace_in(K, doc.value("W", json::array()), ambient, "witness W");
        MatrixSpace<F> target =
            d == 1 ? sp : make_space(K, ambient, spanning_matrices(K, blowup_space(sp, d)));
        ShrunkWitness<F> w{U, W, c};
        std::string reason;
        const bool ok = verify_shrunk(K, target, w, &reason);
        require(ok, errc::invalid_witness, "shrunk witness rejected: " + reason);
        return;
    }
    if (type == "full_rank") {
        const auto bu = blowup_space(sp, d);
        const auto coeffs =
            vec_in(K, doc.value("coeffs", json::array()), sp.basis.size() * d * d, "coeffs");
        const Mat<F> A = blowup_element(K, bu, coeffs);
        const std::size_t r = rank(K, A);
        const std::size_t claimed =
            doc.contains("rank") ? doc["rank"].get<std::size_t>() : sp.n * d;
        require(r == claimed, errc::invalid_witness,
                "certificate rank is " + std::to_string(r) + ", claimed " +
                    std::to_string(claimed));
        require(r == sp.n * d, errc::invalid_witness,
                "certificate element is singular: rank " + std::to_string(r) + " of " +
                    std::to_string(sp.n * d));
        return;
    }
    fail(errc::invalid_input, "unknown witness type: " + type);
}

} // namespace

// ----------------------------------------------------------- C entry points

struct ncrk_instance {
    std::variant<Instance<Fp>, Instance<Rationals>> v;
    std::string field;
};

struct ncrk_result {
    std::string text;
};

extern "C" {

const char* ncrk_version(void) { return NCRK_VERSION_STRING; }

ncrk_instance* ncrk_instance_parse(const char* text, char** err) {
    if (err) *err = nullptr;
    if (text == nullptr) {
        set_err(err, "null instance text");
        return nullptr;
    }
    try {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            fail(errc::invalid_input, std::string("malformed instance JSON: ") + e.what());
        }
        require(doc.is_object() && doc.contains("field") && doc["field"].is_string(),
                errc::invalid_input, "instance needs a \"field\" string");
        const auto fd = FieldDesc::parse(doc["field"].get<std::string>());
        auto* inst = new ncrk_instance;
        inst->field = fd.str();
        if (fd.rational) {
            Rationals K;
            inst->v = Instance<Rationals>{K, parse_space(K, doc)};
        } else {
            Fp K(fd.p);
            inst->v = Instance<Fp>{K, parse_space(K, doc)};
        }
        return inst;
    } catch (const error& e) {
        set_err(err, e.what());
        return nullptr;
    } catch (const std::bad_alloc&) {
        set_err(err, "out of memory");
        return nullptr;
    } catch (const std::exception& e) {
        set_err(err, std::string("internal error: ") + e.what());
        return nullptr;
    }
}

void ncrk_instance_free(ncrk_instance* inst) { delete inst; }

ncrk_status ncrk_run(const ncrk_instance* inst, const char* op, const char* options_json,
                     ncrk_result** out, char** err) {
    if (err) *err = nullptr;
    if (out) *out = nullptr;
    if (inst == nullptr || op == nullptr || out == nullptr) {
        set_err(err, "null argument to ncrk_run");
        return NCRK_EINPUT;
    }
    try {
        const json opts = parse_options(options_json);
        const std::string opname(op);
        json doc = std::visit(
            [&](const auto& typed) { return run_op(typed.K, typed.sp, inst->field, opname, opts); },
            inst->v);
        auto* res = new ncrk_result{doc.dump(2) + "\n"};
        *out = res;
        return NCRK_OK;
    } catch (const error& e) {
        set_err(err, e.what());
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        set_err(err, "out of memory");
        return NCRK_ERESOURCE;
    } catch (const std::exception& e) {
        set_err(err, std::string("internal error: ") + e.what());
        return NCRK_EINTERNAL;
    }
}

ncrk_status ncrk_verify(const ncrk_instance* inst, const char* witness_json, char** err) {
    if (err) *err = nullptr;
    if (inst == nullptr || witness_json == nullptr) {
        set_err(err, "null argument to ncrk_verify");
        return NCRK_EINPUT;
    }
    try {
        json doc;
        try {
            doc = json::parse(witness_json);
        } catch (const json::exception& e) {
            fail(errc::invalid_input, std::string("malformed witness JSON: ") + e.what());
        }
        std::visit([&](const auto& typed) { verify_doc(typed.K, typed.sp, doc); }, inst->v);
        return NCRK_OK;
    } catch (const error& e) {
        set_err(err, e.what());
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        set_err(err, "out of memory");
        return NCRK_ERESOURCE;
    } catch (const std::exception& e) {
        set_err(err, std::string("internal error: ") + e.what());
        return NCRK_EINTERNAL;
    }
}

const char* ncrk_result_json(const ncrk_result* res) { return res ? res->text.c_str() : nullptr; }

void ncrk_result_free(ncrk_result* res) { delete res; }

void ncrk_string_free(char* s) { std::free(s); }

} // extern "C"
