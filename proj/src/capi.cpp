#include "qgeo/qgeo.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "intelligent.hpp"
#include "runner.hpp"

namespace {

thread_local std::string g_last_error;

qgeo_status set_error(qgeo::Status status, const char* what) {
  g_last_error = what;
  return static_cast<qgeo_status>(static_cast<int>(status));
}

/// Runs the body, translating exceptions into status codes.
template <typename Fn>
qgeo_status guarded(Fn&& fn) {
  try {
    fn();
    return QGEO_OK;
  } catch (const qgeo::Error& e) {
    return set_error(e.status(), e.what());
  } catch (const std::exception& e) {
    return set_error(qgeo::Status::numerical_error, e.what());
  }
}

qgeo_status require(bool ok, const char* what) {
  if (ok) return QGEO_OK;
  return set_error(qgeo::Status::invalid_argument, what);
}

qgeo::Vector vector_from_interleaved(size_t dim, const double* re_im) {
  qgeo::Vector v(static_cast<qgeo::Index>(dim));
  for (size_t k = 0; k < dim; ++k) {
    v[static_cast<qgeo::Index>(k)] = qgeo::cxd(re_im[2 * k], re_im[2 * k + 1]);
  }
  return v;
}

}  // namespace

struct qgeo_context {
  qgeo::Units units;
  qgeo::Tolerances tol;
};

struct qgeo_state {
  qgeo::State state;
};

struct qgeo_generator {
  qgeo::Generator generator;
};

struct qgeo_path {
  qgeo::Path path;
  qgeo::Units units;  // convention the path was sampled under
};

struct qgeo_family {
  qgeo::IntelligentFamily family;
  qgeo::Units units;
  qgeo::Tolerances tol;
};

extern "C" {

const char* qgeo_status_name(qgeo_status status) {
  switch (status) {
    case QGEO_OK: return "ok";
    case QGEO_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case QGEO_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case QGEO_ERR_NOT_HERMITIAN: return "not_hermitian";
    case QGEO_ERR_NOT_NORMALIZED: return "not_normalized";
    case QGEO_ERR_DEGENERATE_PAIR: return "degenerate_pair";
    case QGEO_ERR_RANGE: return "range_error";
    case QGEO_ERR_COINCIDENT_ENDPOINTS: return "coincident_endpoints";
    case QGEO_ERR_STEP_TOO_COARSE: return "step_too_coarse";
    case QGEO_ERR_NUMERICAL: return "numerical_error";
    case QGEO_ERR_IO: return "io_error";
  }
  return "unknown";
}

const char* qgeo_last_error_message(void) { return g_last_error.c_str(); }

const char* qgeo_version(void) { return "1.0.0"; }

qgeo_status qgeo_context_create(qgeo_context** out) {
  if (auto s = require(out != nullptr, "out is null"); s != QGEO_OK) return s;
  return guarded([&] { *out = new qgeo_context(); });
}

void qgeo_context_destroy(qgeo_context* ctx) { delete ctx; }

qgeo_status qgeo_context_set_hbar(qgeo_context* ctx, double hbar) {
  if (auto s = require(ctx != nullptr, "ctx is null"); s != QGEO_OK) return s;
  return guarded([&] { ctx->units = qgeo::Units(hbar); });
}

double qgeo_context_hbar(const qgeo_context* ctx) {
  return ctx ? ctx->units.hbar : 0.0;
}

double qgeo_context_bound(const qgeo_context* ctx) {
  return ctx ? ctx->units.bound() : 0.0;
}

qgeo_status qgeo_context_set_tolerance(qgeo_context* ctx, const char* name, double value) {
  if (auto s = require(ctx != nullptr && name != nullptr, "ctx/name is null"); s != QGEO_OK) {
    return s;
  }
  return guarded([&] {
    qgeo::Tolerances t = ctx->tol;
    const std::string key = name;
    if (key == "norm") {
      t.norm = value;
    } else if (key == "herm") {
      t.herm = value;
    } else if (key == "saturation_rel") {
      t.saturation_rel = value;
    } else if (key == "residual_abs") {
      t.residual_abs = value;
    } else if (key == "rank_cutoff") {
      t.rank_cutoff = value;
    } else {
      qgeo::fail(qgeo::Status::invalid_argument, "unknown tolerance '" + key + "'");
    }
    t.validate();
    ctx->tol = t;
  });
}

qgeo_status qgeo_state_create(const qgeo_context* ctx, size_t dim, const double* re_im,
                              qgeo_state** out) {
  if (auto s = require(ctx && re_im && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    *out = new qgeo_state{qgeo::State(vector_from_interleaved(dim, re_im), ctx->tol)};
  });
}

qgeo_status qgeo_state_create_normalized(const qgeo_context* ctx, size_t dim,
                                         const double* re_im, qgeo_state** out) {
  if (auto s = require(ctx && re_im && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    *out = new qgeo_state{
        qgeo::State::normalized(vector_from_interleaved(dim, re_im), ctx->tol)};
  });
}

qgeo_status qgeo_state_create_basis(const qgeo_context* ctx, size_t dim, size_t k,
                                    qgeo_state** out) {
  if (auto s = require(ctx && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    *out = new qgeo_state{qgeo::State::basis(static_cast<qgeo::Index>(dim),
                                             static_cast<qgeo::Index>(k), ctx->tol)};
  });
}

void qgeo_state_destroy(qgeo_state* state) { delete state; }

size_t qgeo_state_dim(const qgeo_state* state) {
  return state ? static_cast<size_t>(state->state.dim()) : 0;
}

qgeo_status qgeo_state_amplitudes(const qgeo_state* state, double* re_im_out) {
  if (auto s = require(state && re_im_out, "null argument"); s != QGEO_OK) return s;
  const qgeo::Vector& v = state->state.amplitudes();
  for (qgeo::Index k = 0; k < v.size(); ++k) {
    re_im_out[2 * k] = v[k].real();
    re_im_out[2 * k + 1] = v[k].imag();
  }
  return QGEO_OK;
}

qgeo_status qgeo_inner_product(const qgeo_state* a, const qgeo_state* b, double* re_out,
                               double* im_out) {
  if (auto s = require(a && b && re_out && im_out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    const qgeo::cxd value = qgeo::inner_product(a->state, b->state);
    *re_out = value.real();
    *im_out = value.imag();
  });
}

qgeo_status qgeo_bargmann_angle(const qgeo_state* a, const qgeo_state* b, double* out) {
  if (auto s = require(a && b && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] { *out = qgeo::bargmann_angle(a->state, b->state); });
}

qgeo_status qgeo_generator_create(const qgeo_context* ctx, size_t dim, const double* re_im,
                                  qgeo_generator** out) {
  if (auto s = require(ctx && re_im && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    qgeo::Matrix m(static_cast<qgeo::Index>(dim), static_cast<qgeo::Index>(dim));
    for (size_t r = 0; r < dim; ++r) {
      for (size_t c = 0; c < dim; ++c) {
        const size_t at = 2 * (r * dim + c);
        m(static_cast<qgeo::Index>(r), static_cast<qgeo::Index>(c)) =
            qgeo::cxd(re_im[at], re_im[at + 1]);
      }
    }
    *out = new qgeo_generator{qgeo::Generator(std::move(m), ctx->tol)};
  });
}

qgeo_status qgeo_generator_create_split(const qgeo_context* ctx, size_t dim, size_t i,
                                        size_t j, double a0, double a1,
                                        qgeo_generator** out) {
  if (auto s = require(ctx && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    qgeo::SplitGeneratorSpec spec;
    spec.dim = static_cast<qgeo::Index>(dim);
    spec.i = static_cast<qgeo::Index>(i);
    spec.j = static_cast<qgeo::Index>(j);
    spec.a0 = a0;
    spec.a1 = a1;
    *out = new qgeo_generator{qgeo::build_split_generator(spec, ctx->tol)};
  });
}

void qgeo_generator_destroy(qgeo_generator* gen) { delete gen; }

size_t qgeo_generator_dim(const qgeo_generator* gen) {
  return gen ? static_cast<size_t>(gen->generator.dim()) : 0;
}

qgeo_status qgeo_generator_eigenvalues(const qgeo_generator* gen, double* out) {
  if (auto s = require(gen && out, "null argument"); s != QGEO_OK) return s;
  const Eigen::VectorXd& ev = gen->generator.eigenvalues();
  for (qgeo::Index k = 0; k < ev.size(); ++k) out[k] = ev[k];
  return QGEO_OK;
}

qgeo_status qgeo_generator_is_degenerate(const qgeo_generator* gen, int* out) {
  if (auto s = require(gen && out, "null argument"); s != QGEO_OK) return s;
  *out = gen->generator.degenerate() ? 1 : 0;
  return QGEO_OK;
}

qgeo_status qgeo_generator_eigenstate(const qgeo_generator* gen, size_t k,
                                      qgeo_state** out) {
  if (auto s = require(gen && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    *out = new qgeo_state{gen->generator.eigenstate(static_cast<qgeo::Index>(k))};
  });
}

qgeo_status qgeo_expectation(const qgeo_generator* gen, const qgeo_state* psi,
                             double* out) {
  if (auto s = require(gen && psi && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] { *out = qgeo::expectation(gen->generator, psi->state); });
}

qgeo_status qgeo_uncertainty(const qgeo_generator* gen, const qgeo_state* psi,
                             double* out) {
  if (auto s = require(gen && psi && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] { *out = qgeo::uncertainty(gen->generator, psi->state); });
}

qgeo_status qgeo_evolve_exact(const qgeo_context* ctx, const qgeo_generator* gen,
                              const qgeo_state* psi0, double lambda, qgeo_state** out) {
  if (auto s = require(ctx && gen && psi0 && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    *out = new qgeo_state{
        qgeo::evolve_exact(gen->generator, psi0->state, lambda, ctx->units)};
  });
}

qgeo_status qgeo_path_sample(const qgeo_context* ctx, const qgeo_generator* gen,
                             const qgeo_state* psi0, double lambda1, double lambda2,
                             size_t n, qgeo_path** out) {
  if (auto s = require(ctx && gen && psi0 && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    qgeo::ParameterGrid grid(lambda1, lambda2, static_cast<qgeo::Index>(n));
    *out = new qgeo_path{qgeo::sample_path(gen->generator, psi0->state, grid, ctx->units),
                         ctx->units};
  });
}

qgeo_status qgeo_path_sample_ode(const qgeo_context* ctx, const qgeo_generator* gen,
                                 const qgeo_state* psi0, double lambda1, double lambda2,
                                 size_t n, double* drift_out, qgeo_path** out) {
  if (auto s = require(ctx && gen && psi0 && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    qgeo::ParameterGrid grid(lambda1, lambda2, static_cast<qgeo::Index>(n));
    qgeo::Path path = qgeo::evolve_ode(gen->generator, psi0->state, grid, ctx->units);
    if (drift_out) *drift_out = path.max_norm_drift;
    *out = new qgeo_path{std::move(path), ctx->units};
  });
}

void qgeo_path_destroy(qgeo_path* path) { delete path; }

size_t qgeo_path_n_samples(const qgeo_path* path) {
  return path ? path->path.states.size() : 0;
}

qgeo_status qgeo_path_state(const qgeo_path* path, size_t k, qgeo_state** out) {
  if (auto s = require(path && out, "null argument"); s != QGEO_OK) return s;
  if (auto s = require(k < path->path.states.size(), "sample index out of range");
      s != QGEO_OK) {
    return s;
  }
  return guarded([&] { *out = new qgeo_state{path->path.states[k]}; });
}

qgeo_status qgeo_path_geometry(const qgeo_context* ctx, const qgeo_path* path,
                               const qgeo_generator* gen, qgeo_geometry_report* out) {
  if (auto s = require(ctx && path && gen && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    const qgeo::GeometryReport r =
        qgeo::geometry_report(path->path, gen->generator, ctx->units, ctx->tol);
    out->fs_length = r.fs_length;
    out->geodesic_distance = r.geodesic_distance;
    out->transported_length = r.transported_length;
    out->residual_max = r.residual_max;
    out->gram_rank = r.gram_rank;
    out->speed = r.speed;
    out->quad_error_s = r.quad_error_s;
    out->quad_error_l = r.quad_error_l;
    out->transport_defect = r.transport_defect;
  });
}

qgeo_status qgeo_path_pbur(const qgeo_context* ctx, const qgeo_path* path,
                           const qgeo_generator* gen, qgeo_pbur_report* out) {
  if (auto s = require(ctx && path && gen && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    const qgeo::PburReport r =
        qgeo::evaluate_pbur(path->path, gen->generator, ctx->units, ctx->tol);
    out->avg_uncertainty = r.avg_uncertainty;
    out->delta_lambda = r.delta_lambda;
    out->product = r.product;
    out->bound = r.bound;
    out->ratio = r.ratio;
    out->saturated = r.saturated ? 1 : 0;
    out->bound_violated = r.bound_violated ? 1 : 0;
    out->saturation_rel = r.saturation_rel;
    out->quad_error = r.quad_error;
  });
}

qgeo_status qgeo_family_horesh_mann(const qgeo_context* ctx, const qgeo_generator* gen,
                                    size_t i, size_t j, qgeo_family** out) {
  if (auto s = require(ctx && gen && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    *out = new qgeo_family{
        qgeo::horesh_mann_family(gen->generator, static_cast<qgeo::Index>(i),
                                 static_cast<qgeo::Index>(j), ctx->units, ctx->tol),
        ctx->units, ctx->tol};
  });
}

qgeo_status qgeo_family_nonorthogonal(const qgeo_context* ctx, size_t dim, size_t i,
                                      size_t j, double a0, double a1, qgeo_family** out) {
  if (auto s = require(ctx && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    qgeo::SplitGeneratorSpec spec;
    spec.dim = static_cast<qgeo::Index>(dim);
    spec.i = static_cast<qgeo::Index>(i);
    spec.j = static_cast<qgeo::Index>(j);
    spec.a0 = a0;
    spec.a1 = a1;
    *out = new qgeo_family{qgeo::nonorthogonal_family(spec, ctx->units, ctx->tol),
                           ctx->units, ctx->tol};
  });
}

void qgeo_family_destroy(qgeo_family* family) { delete family; }

qgeo_status qgeo_family_lambda_sup(const qgeo_family* family, double* out,
                                   int* inclusive_out) {
  if (auto s = require(family && out && inclusive_out, "null argument"); s != QGEO_OK) {
    return s;
  }
  *out = family->family.lambda_sup();
  *inclusive_out = family->family.sup_inclusive() ? 1 : 0;
  return QGEO_OK;
}

qgeo_status qgeo_family_state(const qgeo_family* family, double lambda, qgeo_state** out) {
  if (auto s = require(family && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] { *out = new qgeo_state{family->family.state_at(lambda)}; });
}

qgeo_status qgeo_family_sample(const qgeo_family* family, double lambda2, size_t n,
                               qgeo_path** out) {
  if (auto s = require(family && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    qgeo::ParameterGrid grid(0.0, lambda2, static_cast<qgeo::Index>(n));
    *out = new qgeo_path{family->family.sample(grid), family->units};
  });
}

qgeo_status qgeo_family_generator(const qgeo_family* family, qgeo_generator** out) {
  if (auto s = require(family && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] { *out = new qgeo_generator{family->family.generator()}; });
}

qgeo_status qgeo_family_verify(const qgeo_family* family, double lambda2, size_t n,
                               qgeo_theorem_report* out) {
  if (auto s = require(family && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    qgeo::ParameterGrid grid(0.0, lambda2, static_cast<qgeo::Index>(n));
    const qgeo::TheoremReport r =
        qgeo::verify_theorem(family->family, grid, family->units, family->tol);
    out->residual_max = r.residual_max;
    out->gram_rank = r.gram_rank;
    out->eq7_max_deviation = r.eq7_max_deviation;
    out->eq7_match = r.eq7_match ? 1 : 0;
    out->endpoint_form_deviation = r.endpoint_form_deviation;
    out->fd_tangent_deviation = r.fd_tangent_deviation;
    out->transport_defect = r.transport_defect;
    out->speed = r.speed;
    out->speed_defect = r.speed_defect;
  });
}

qgeo_status qgeo_counterexample_three_level(const qgeo_context* ctx, double scale,
                                            qgeo_counterexample_report* out) {
  if (auto s = require(ctx && out, "null argument"); s != QGEO_OK) return s;
  return guarded([&] {
    const qgeo::CounterexampleReport r =
        qgeo::counterexample_three_level(scale, ctx->units, ctx->tol);
    out->ratio = r.ratio;
    out->residual_max = r.residual_max;
    out->gram_rank = r.gram_rank;
    out->lambda_star = r.lambda_star;
    out->speed = r.speed;
  });
}

qgeo_status qgeo_run(const char* config_json, char** report_out, int* exit_code_out) {
  if (auto s = require(config_json && report_out && exit_code_out, "null argument");
      s != QGEO_OK) {
    return s;
  }
  const qgeo::run::RunResult result = qgeo::run::execute_json(config_json);
  if (result.exit_code == 2) {
    return set_error(qgeo::Status::invalid_argument, result.error.c_str());
  }
  char* buffer = static_cast<char*>(std::malloc(result.report.size() + 1));
  if (!buffer) return set_error(qgeo::Status::io_error, "out of memory");
  std::memcpy(buffer, result.report.c_str(), result.report.size() + 1);
  *report_out = buffer;
  *exit_code_out = result.exit_code;
  return QGEO_OK;
}

void qgeo_string_free(char* s) { std::free(s); }

}  // extern "C"
