#include "fpsmax/fpsmax.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "fpsmax/generator.hpp"
#include "fpsmax/oracle.hpp"
#include "fpsmax/solver.hpp"
#include "fpsmax/wcnf.hpp"

struct fpsmax_formula {
    fpsmax::Formula formula;
};

struct fpsmax_result {
    fpsmax::RunResult run;
    std::uint32_t num_vars = 0;
};

namespace {

thread_local std::string last_error;

fpsmax_status fail(fpsmax_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Maps exceptions escaping the C++ core onto status codes.
template <typename Fn>
fpsmax_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const fpsmax::ParseError& e) {
        return fail(FPSMAX_ERR_PARSE, e.what());
    } catch (const fpsmax::FormulaError& e) {
        return fail(FPSMAX_ERR_RANGE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(FPSMAX_ERR_ARGUMENT, e.what());
    } catch (const fpsmax::EngineError& e) {
        return fail(FPSMAX_ERR_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(FPSMAX_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(FPSMAX_ERR_INTERNAL, e.what());
    }
}

fpsmax::SolverConfig to_config(const fpsmax_config& c) {
    auto mode = static_cast<fpsmax::Mode>(c.mode);
    if (c.mode < FPSMAX_MODE_FPS || c.mode > FPSMAX_MODE_FPS_NO_STOP) throw std::invalid_argument("unknown mode");
    fpsmax::SolverConfig cfg = fpsmax::SolverConfig::for_mode(mode);
    cfg.sc_num = c.sc_num;
    cfg.sv_num = c.sv_num;
    cfg.time_limit = std::chrono::duration<double>(c.time_limit_s);
    if (c.max_flips > 0) cfg.max_flips = c.max_flips;
    cfg.seed = c.seed;
    return cfg;
}

}  // namespace

extern "C" {

const char* fpsmax_last_error(void) { return last_error.c_str(); }

const char* fpsmax_version(void) { return "1.0.0"; }

fpsmax_status fpsmax_formula_parse(const char* text, size_t len, fpsmax_formula** out) {
    if ((!text && len) || !out) return fail(FPSMAX_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new fpsmax_formula{fpsmax::parse_wcnf(std::string_view(text ? text : "", len))};
        return FPSMAX_OK;
    });
}

fpsmax_status fpsmax_formula_load(const char* path, fpsmax_formula** out) {
    if (!path || !out) return fail(FPSMAX_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        fpsmax::Formula f;
        try {
            f = fpsmax::load_wcnf(path);
        } catch (const fpsmax::ParseError&) {
            throw;
        } catch (const std::runtime_error& e) {
            return fail(FPSMAX_ERR_IO, e.what());
        }
        *out = new fpsmax_formula{std::move(f)};
        return FPSMAX_OK;
    });
}

fpsmax_status fpsmax_formula_generate(const fpsmax_generator_params* params, fpsmax_formula** out) {
    if (!params || !out) return fail(FPSMAX_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        fpsmax::GeneratorParams p;
        p.num_vars = params->num_vars;
        p.num_hard = params->num_hard;
        p.num_soft = params->num_soft;
        p.hard_len = params->hard_len;
        p.soft_len_max = params->soft_len_max;
        p.max_weight = params->max_weight;
        p.planted = params->planted != 0;
        p.seed = params->seed;
        *out = new fpsmax_formula{fpsmax::generate_formula(p)};
        return FPSMAX_OK;
    });
}

void fpsmax_formula_free(fpsmax_formula* f) { delete f; }

uint32_t fpsmax_formula_num_vars(const fpsmax_formula* f) { return f ? f->formula.num_vars() : 0; }
size_t fpsmax_formula_num_clauses(const fpsmax_formula* f) { return f ? f->formula.num_clauses() : 0; }
size_t fpsmax_formula_num_hard(const fpsmax_formula* f) { return f ? f->formula.num_hard() : 0; }
int fpsmax_formula_is_weighted(const fpsmax_formula* f) { return f && f->formula.is_weighted() ? 1 : 0; }

fpsmax_status fpsmax_formula_write(const fpsmax_formula* f, fpsmax_dialect dialect, char** out, size_t* len) {
    if (!f || !out) return fail(FPSMAX_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const std::string text = fpsmax::to_wcnf(
            f->formula, dialect == FPSMAX_DIALECT_LEGACY ? fpsmax::WcnfDialect::Legacy : fpsmax::WcnfDialect::Mse2022);
        char* buf = static_cast<char*>(std::malloc(text.size() + 1));
        if (!buf) throw std::bad_alloc();
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out = buf;
        if (len) *len = text.size();
        return FPSMAX_OK;
    });
}

void fpsmax_string_free(char* s) { std::free(s); }

fpsmax_status fpsmax_evaluate(const fpsmax_formula* f, const uint8_t* values, size_t n, int* feasible,
                              uint64_t* cost) {
    if (!f || (!values && n) || !feasible) return fail(FPSMAX_ERR_ARGUMENT, "null argument");
    if (n != f->formula.num_vars()) return fail(FPSMAX_ERR_ARGUMENT, "assignment length does not match num_vars");
    return guarded([&] {
        fpsmax::Assignment a(std::vector<std::uint8_t>(values, values + n));
        const fpsmax::Cost c = fpsmax::evaluate_cost(f->formula, a);
        *feasible = c.feasible() ? 1 : 0;
        if (c.feasible() && cost) *cost = c.value();
        return FPSMAX_OK;
    });
}

fpsmax_status fpsmax_exact_solve(const fpsmax_formula* f, int* feasible, uint64_t* cost, uint8_t* model) {
    if (!f || !feasible) return fail(FPSMAX_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const fpsmax::ExactResult r = fpsmax::exact_solve(f->formula);
        *feasible = r.cost.feasible() ? 1 : 0;
        if (r.cost.feasible()) {
            if (cost) *cost = r.cost.value();
            if (model) std::copy(r.witness->raw().begin(), r.witness->raw().end(), model);
        }
        return FPSMAX_OK;
    });
}

void fpsmax_config_default(fpsmax_config* cfg) {
    if (!cfg) return;
    const fpsmax::SolverConfig d;
    cfg->mode = FPSMAX_MODE_FPS;
    cfg->sc_num = d.sc_num;
    cfg->sv_num = d.sv_num;
    cfg->time_limit_s = d.time_limit.count();
    cfg->max_flips = 0;
    cfg->seed = d.seed;
}

fpsmax_status fpsmax_mode_from_name(const char* name, fpsmax_mode* mode) {
    if (!name || !mode) return fail(FPSMAX_ERR_ARGUMENT, "null argument");
    auto m = fpsmax::parse_mode(name);
    if (!m) return fail(FPSMAX_ERR_ARGUMENT, std::string("unknown mode '") + name + "'");
    *mode = static_cast<fpsmax_mode>(*m);
    return FPSMAX_OK;
}

const char* fpsmax_mode_name(fpsmax_mode mode) {
    if (mode < FPSMAX_MODE_FPS || mode > FPSMAX_MODE_FPS_NO_STOP) return nullptr;
    return fpsmax::to_string(static_cast<fpsmax::Mode>(mode));
}

fpsmax_status fpsmax_solve(const fpsmax_formula* f, const fpsmax_config* cfg, fpsmax_improvement_fn on_improve,
                           void* user, fpsmax_result** out) {
    if (!f || !cfg || !out) return fail(FPSMAX_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const fpsmax::SolverConfig config = to_config(*cfg);
        config.validate();
        fpsmax::ImprovementCallback cb;
        if (on_improve) cb = [&](fpsmax::Weight c, double t) { on_improve(c, t, user); };
        auto* r = new fpsmax_result{fpsmax::solve(f->formula, config, cb), f->formula.num_vars()};
        *out = r;
        return FPSMAX_OK;
    });
}

void fpsmax_result_free(fpsmax_result* r) { delete r; }

int fpsmax_result_feasible(const fpsmax_result* r) { return r && r->run.best_cost.feasible() ? 1 : 0; }
uint64_t fpsmax_result_cost(const fpsmax_result* r) {
    return r && r->run.best_cost.feasible() ? r->run.best_cost.value() : UINT64_MAX;
}
uint64_t fpsmax_result_flips(const fpsmax_result* r) { return r ? r->run.flips : 0; }
double fpsmax_result_elapsed(const fpsmax_result* r) { return r ? r->run.elapsed_s : 0.0; }
double fpsmax_result_time_to_best(const fpsmax_result* r) { return r ? r->run.time_to_best_s : 0.0; }
uint32_t fpsmax_result_num_vars(const fpsmax_result* r) { return r ? r->num_vars : 0; }

fpsmax_status fpsmax_result_model(const fpsmax_result* r, uint8_t* values, size_t n) {
    if (!r || (!values && n)) return fail(FPSMAX_ERR_ARGUMENT, "null argument");
    if (!r->run.best_assignment) return fail(FPSMAX_ERR_ARGUMENT, "no feasible assignment");
    if (n != r->num_vars) return fail(FPSMAX_ERR_ARGUMENT, "model buffer length does not match num_vars");
    auto raw = r->run.best_assignment->raw();
    std::copy(raw.begin(), raw.end(), values);
    return FPSMAX_OK;
}

}  // extern "C"
