// Copyright 2026 The rqcm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rqcm: experiment runner. Subcommands produce one run record each (CSV or
// JSON); `verify` runs the acceptance suite. Exit codes: 0 ok, 1 verification
// failure, 2 usage error, 3 capacity error. Wall time goes to stderr only.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rqcm/acceptance.hpp"
#include "rqcm/boolean_fourier.hpp"
#include "rqcm/bounds.hpp"
#include "rqcm/cli_config.hpp"
#include "rqcm/dense_sim.hpp"
#include "rqcm/f2_walk.hpp"
#include "rqcm/io.hpp"
#include "rqcm/moment_ops.hpp"
#include "rqcm/phase_walk.hpp"

using namespace rqcm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct Common {
    std::uint64_t seed = 1;
    std::string output = "-";
    std::string format = "csv";
    int workers = 1;
    std::string config;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--output", c.output, "Output path, '-' for stdout");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", c.workers, "Worker threads for Monte Carlo trials")->check(CLI::PositiveNumber);
    sub->add_option("--config", c.config, "JSON config file; flags override its values");
}

void emit(const RunRecord& rec, const Common& c) {
    const std::string text = rec.write(c.output, parse_format(c.format));
    if (!text.empty()) std::cout << text;
}

std::vector<std::uint64_t> range_list(std::uint64_t lo, std::uint64_t hi, std::uint64_t step) {
    std::vector<std::uint64_t> v;
    for (std::uint64_t x = lo; x <= hi; x += step) v.push_back(x);
    return v;
}

// ---------------------------------------------------------------------------

struct MomentsArgs {
    int n = 2;
    std::vector<int> t{2};
    std::vector<std::uint64_t> d = range_list(0, 100, 10);
    std::uint64_t trials = 2000;
    std::string measure = "haar";
    std::string state = "zero";
};

void cmd_moments(const MomentsArgs& a, const Common& c, const ojson& cfg) {
    RunRecord rec("moments", cfg, c.seed,
                  {"n", "d", "t", "estimate", "stderr", "rhs_all_t", "rhs_large_t", "vacuous", "haar_exact"});
    const auto measure = a.measure == "zeta" ? GateMeasure::Zeta : GateMeasure::Haar;
    const auto psi = a.state == "plus" ? StateVector::plus(a.n) : StateVector::zero(a.n);
    for (int t : a.t) {
        for (auto d : a.d) {
            const auto e = mc_moment(a.n, d, t, psi, StateVector::zero(a.n), measure, a.trials, c.seed, c.workers);
            const auto all_t = bounds::local_moment_rhs(a.n, static_cast<double>(d), t, bounds::MomentVariant::AllT);
            const auto large_t = bounds::local_moment_rhs(a.n, static_cast<double>(d), t, bounds::MomentVariant::LargeT);
            rec.add_row(Provenance::MonteCarlo, {a.n, d, t, e.mean, e.stderr_, all_t.value, large_t.value, all_t.vacuous,
                                                 haar_exact_moment(std::ldexp(1.0, a.n), t)});
        }
    }
    emit(rec, c);
}

// ---------------------------------------------------------------------------

struct IdealArgs {
    std::vector<int> n{1};
    std::vector<int> t{1};
    std::vector<std::uint64_t> m = range_list(0, 10, 1);
    std::uint64_t trials = 10000;
    bool spectrum = false;
};

void cmd_ideal_walk(const IdealArgs& a, const Common& c, const ojson& cfg) {
    if (a.spectrum) {
        RunRecord rec("ideal-walk-spectrum", cfg, c.seed,
                      {"n", "t", "zero_count", "eigenvalue", "multiplicity", "rank", "witness"});
        for (int n : a.n) {
            for (int t : a.t) {
                const IdealSpectrum spectrum(n, t);
                const auto second = spectrum.second();
                for (auto it = spectrum.multiplicities().rbegin(); it != spectrum.multiplicities().rend(); ++it) {
                    const auto [k, w] = *it;
                    const Ratio ev{k, spectrum.dimension()};
                    std::string rank = k == spectrum.dimension() ? "top" : (second && *second == ev ? "second" : "");
                    std::string witness;
                    if (!rank.empty()) {
                        const auto [x, xp] = spectrum.witness(k);
                        for (auto v : x) witness += BitString(n, v).str() + " ";
                        witness += "|";
                        for (auto v : xp) witness += " " + BitString(n, v).str();
                    }
                    rec.add_row(Provenance::Exact, {n, t, k, ev.value(), w, rank, witness});
                }
            }
        }
        emit(rec, c);
        return;
    }
    RunRecord rec("ideal-walk", cfg, c.seed, {"n", "t", "m", "exact", "estimate", "stderr", "within_3sigma"});
    for (int n : a.n) {
        for (int t : a.t) {
            const IdealSpectrum spectrum(n, t);
            for (auto m : a.m) {
                const double ex = spectrum.moment(m);
                if (a.trials == 0) {
                    rec.add_row(Provenance::Exact, {n, t, m, ex, nullptr, nullptr, nullptr});
                    continue;
                }
                const auto e = mc_moment_ideal(n, m, t, a.trials, c.seed, c.workers);
                rec.add_row(Provenance::MonteCarlo, {n, t, m, ex, e.mean, e.stderr_, e.within(ex)});
            }
        }
    }
    emit(rec, c);
}

// ---------------------------------------------------------------------------

struct FourierArgs {
    std::string mode = "parseval";
    std::vector<int> n{1, 2, 3};
    std::vector<int> t{1, 2, 3};
    double A = 4;
    std::uint64_t trials = 0;
    std::vector<std::string> first, second;
};

void cmd_fourier(const FourierArgs& a, const Common& c, const ojson& cfg) {
    if (a.mode == "pair") {
        if (a.first.empty() || a.first.size() != a.second.size()) {
            throw InputError("fourier --mode pair needs --first and --second of equal length");
        }
        const auto pair = TuplePair::parse(a.first, a.second);
        const auto f = build_f(pair);
        const auto rep = support_report(f);
        RunRecord rec("fourier-pair", cfg, c.seed,
                      {"n", "t", "r", "support", "distinguishing_prob", "bound", "holds"});
        if (pair.permutation_related()) {
            rec.add_row(Provenance::Exact, {pair.n(), pair.t(), 0, rep.support_size, 0.0, nullptr, nullptr});
        } else {
            const auto p = parseval_check(f);
            rec.add_row(Provenance::Exact,
                        {pair.n(), pair.t(), p.r, rep.support_size, p.prob.value(), p.bound.value(), p.holds});
        }
        emit(rec, c);
        return;
    }
    if (a.mode == "low-support") {
        RunRecord rec("fourier-low-support", cfg, c.seed,
                      {"n", "t", "A", "exhaustive", "fraction", "ci_low", "ci_high", "bound", "vacuous"});
        for (int n : a.n) {
            for (int t : a.t) {
                const auto r = a.trials == 0 ? low_support_fraction(n, t, a.A)
                                             : low_support_fraction(n, t, a.A, SampledMode{a.trials, c.seed}, c.workers);
                rec.add_row(r.exhaustive ? Provenance::Exact : Provenance::MonteCarlo,
                            {n, t, a.A, r.exhaustive, r.fraction, r.ci.low, r.ci.high, r.bound, r.vacuous});
            }
        }
        emit(rec, c);
        return;
    }
    if (a.mode != "parseval") throw InputError("fourier --mode must be parseval, low-support or pair");
    RunRecord rec("fourier-parseval", cfg, c.seed,
                  {"n", "t", "canonical_pairs", "ordered_pairs", "degenerate", "violations", "min_prob_times_2r"});
    for (int n : a.n) {
        for (int t : a.t) {
            std::uint64_t pairs = 0, ordered = 0, degenerate = 0, violations = 0;
            double worst = std::numeric_limits<double>::infinity();
            for_each_canonical_pair(n, t, [&](const CanonicalTuple& x, const CanonicalTuple& y, std::uint64_t w) {
                ++pairs;
                ordered += w;
                const auto f = build_f(n, x.values, y.values);
                if (f.empty()) {
                    ++degenerate;
                    return;
                }
                const auto p = parseval_check(f);
                worst = std::min(worst, p.prob.value() * 2.0 * p.r);
                if (!p.holds) ++violations;
            });
            rec.add_row(Provenance::Exact, {n, t, pairs, ordered, degenerate, violations,
                                            std::isinf(worst) ? ojson(nullptr) : ojson(worst)});
        }
    }
    emit(rec, c);
}

// ---------------------------------------------------------------------------

struct ConjectureArgs {
    std::vector<int> n{12};
    std::vector<int> t{64};
    double c = 1.0;
    std::uint64_t trials = 10000;
};

void cmd_conjecture(const ConjectureArgs& a, const Common& c, const ojson& cfg) {
    RunRecord rec("conjecture", cfg, c.seed,
                  {"n", "t", "c", "threshold", "tail", "ci_low", "ci_high", "support_min", "support_median",
                   "support_max"});
    for (int n : a.n) {
        for (int t : a.t) {
            const double threshold = std::ldexp(1.0, n) / std::pow(static_cast<double>(n), a.c);
            if (a.trials == 0) {
                const auto r = low_support_fraction(n, t, threshold);
                rec.add_row(Provenance::Exact, {n, t, a.c, threshold, r.fraction, r.ci.low, r.ci.high, nullptr,
                                                nullptr, nullptr});
                continue;
            }
            const auto r = random_support_tail(n, t, a.c, a.trials, c.seed, c.workers);
            rec.add_row(Provenance::MonteCarlo, {n, t, a.c, r.threshold, r.tail_prob, r.ci.low, r.ci.high,
                                                 r.support_min, r.support_median, r.support_max});
        }
    }
    emit(rec, c);
}

// ---------------------------------------------------------------------------

struct F2MixArgs {
    int n = 3;
    std::vector<std::uint64_t> k;
    std::uint64_t kmax = 200;
    std::uint64_t stride = 10;
    double diameter = 0;  // 0: the rounded rate 1/(500 n^5)
    bool zstring = false;
};

void cmd_f2mix(const F2MixArgs& a, const Common& c, const ojson& cfg) {
    std::vector<std::uint64_t> ks = a.k.empty() ? range_list(0, a.kmax, std::max<std::uint64_t>(1, a.stride)) : a.k;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    if (a.zstring) {
        RunRecord rec("f2mix-zstring", cfg, c.seed, {"n", "k", "tv_nonzero", "tv_all_floor"});
        const auto tv = zstring_tv_exact(a.n, ks.empty() ? 0 : ks.back());
        for (auto k : ks) rec.add_row(Provenance::Exact, {a.n, k, tv[k], nonzero_vs_all_tv(a.n)});
        emit(rec, c);
        return;
    }
    const auto table = enumerate_group(a.n);
    RunRecord rec("f2mix", cfg, c.seed, {"n", "k", "tv", "bound", "bound_vacuous", "holds", "spectral_envelope"});
    const bool dense = table.size() <= kMaxDenseGroupSize;
    const SpectralGap gap = dense ? walk_spectral_gap(table) : SpectralGap{};
    const double rate = a.diameter > 0 ? comparison_rate(a.n, a.diameter) : default_tv_rate(a.n);
    WalkEvolution ev(table);
    for (auto k : ks) {
        while (ev.current().steps < k) ev.advance();
        const auto cmp = tv_distance(ev.current(), a.n, rate);
        rec.add_row(Provenance::Exact,
                    {a.n, k, cmp.tv, cmp.bound, cmp.bound_vacuous, cmp.holds || cmp.bound_vacuous,
                     dense ? ojson(spectral_tv_envelope(gap.second_singular, table.size(), static_cast<double>(k)))
                         : ojson(nullptr)});
    }
    if (dense) {
        rec.summary() = {{"group_size", table.size()}, {"gap", gap.gap}, {"lambda_star", gap.second_singular},
                         {"required_gap", rate}, {"first_useful_step", tv_first_useful_step(a.n, rate)}};
    }
    emit(rec, c);
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
    std::string kind = "f2-walk";
    std::vector<int> n{2, 3};
    std::vector<int> t{1, 2};
    std::string export_stem;
};

void cmd_spectrum(const SpectrumArgs& a, const Common& c, const ojson& cfg) {
    if (a.kind == "f2-walk") {
        RunRecord rec("spectrum-f2-walk", cfg, c.seed,
                      {"n", "group_size", "lambda_second", "lambda_min", "lambda_star", "gap", "required_gap",
                       "holds"});
        for (int n : a.n) {
            const auto table = enumerate_group(n);
            const auto g = walk_spectral_gap(table);
            const double req = 1.0 / (500.0 * std::pow(n, 5));
            rec.add_row(Provenance::Exact,
                        {n, table.size(), g.lambda_second, g.lambda_min, g.second_singular, g.gap, req, g.gap >= req});
        }
        emit(rec, c);
        return;
    }
    if (a.kind == "moment-op") {
        RunRecord rec("spectrum-moment-op", cfg, c.seed,
                      {"t", "dim", "min_eig_difference", "tolerance", "psd_holds", "haar_rank", "haar_idempotency"});
        for (int t : a.t) {
            const auto zeta = moment_op_zeta(t);
            const auto haar = moment_op_haar(t);
            const auto psd = psd_domination_check(zeta, haar);
            const double idem = (haar.entries * haar.entries - haar.entries).cwiseAbs().maxCoeff();
            rec.add_row(Provenance::Exact, {t, zeta.dim(), psd.min_eig, psd.tolerance, psd.holds,
                                            std::lround(haar.entries.trace()), idem});
            if (!a.export_stem.empty()) {
                export_moment_operator(zeta, a.export_stem + "_zeta_t" + std::to_string(t));
                export_moment_operator(haar, a.export_stem + "_haar_t" + std::to_string(t));
            }
        }
        emit(rec, c);
        return;
    }
    if (a.kind != "ideal") throw InputError("spectrum --kind must be f2-walk, moment-op or ideal");
    RunRecord rec("spectrum-ideal", cfg, c.seed, {"n", "t", "top", "second", "expected_second", "parity_t"});
    for (int n : a.n) {
        for (int t : a.t) {
            const IdealSpectrum spectrum(n, t);
            const auto second = spectrum.second();
            rec.add_row(Provenance::Exact, {n, t, spectrum.top().value(), second ? ojson(second->value()) : ojson(nullptr),
                                            1.0 - std::ldexp(1.0, -n), 1 << (n - 1)});
        }
    }
    emit(rec, c);
}

// ---------------------------------------------------------------------------

struct BoundsArgs {
    std::string formula = "unitary";
    bounds::BoundParams p;
    std::vector<double> d{1.0};
    std::string log_base = "2";
    double R = 0;
    double moment = 1;
    double c = 10;
    double lambda = 0.5;
};

void cmd_bounds(BoundsArgs a, const Common& cm, const ojson& cfg) {
    a.p.log_base = a.log_base == "e" ? bounds::LogBase::Natural : bounds::LogBase::Two;
    RunRecord rec("bounds", cfg, cm.seed, {"formula", "n", "d", "t", "delta", "quantity", "value", "vacuous"});
    auto row = [&](const bounds::BoundParams& p, const std::string& q, double v, ojson vac) {
        rec.add_row(Provenance::Formula, {a.formula, p.n, p.d, p.t, p.delta, q, v, std::move(vac)});
    };
    for (double d : a.d) {
        auto p = a.p;
        p.d = d;
        const std::string& f = a.formula;
        if (f == "unitary" || f == "gateset-unitary") {
            const auto b = f == "unitary" ? bounds::unitary_lower_bound(p) : bounds::gateset_bounds(p).unitary;
            row(p, "lower_bound", b.value, b.vacuous);
            row(p, "tilde_delta", b.tilde_delta, nullptr);
            row(p, "bracket", b.bracket, nullptr);
            row(p, "in_regime", b.in_regime ? 1.0 : 0.0, nullptr);
        } else if (f == "state" || f == "gateset-state") {
            const auto b = f == "state" ? bounds::state_lower_bound(p) : bounds::gateset_bounds(p).state;
            row(p, "lower_bound", b.value, b.vacuous);
            row(p, "in_regime", b.in_regime ? 1.0 : 0.0, nullptr);
        } else if (f == "moment") {
            const auto all_t = bounds::local_moment_rhs(p.n, d, p.t, bounds::MomentVariant::AllT);
            const auto large_t = bounds::local_moment_rhs(p.n, d, p.t, bounds::MomentVariant::LargeT);
            row(p, "rhs_all_t", all_t.value, all_t.vacuous);
            row(p, "rhs_large_t", large_t.value, large_t.vacuous);
        } else if (f == "gateset-moment") {
            const auto r = bounds::gateset_moment_rhs(p);
            row(p, "rhs_all_t", r.all_t.value, r.all_t.vacuous);
            row(p, "rhs_large_t", r.large_t.value, r.large_t.vacuous);
        } else if (f == "markov") {
            const auto b = bounds::markov_union_bound(p.t, a.R, p.gateset_size, p.delta, a.moment);
            row(p, "probability", b.value, b.vacuous);
            row(p, "log2_probability", b.log2_value, nullptr);
        } else if (f == "epsnet") {
            const auto e = bounds::epsnet_and_accumulation(p.delta, d, p.B, p.log_base);
            row(p, "epsilon", e.epsilon, nullptr);
            row(p, "log2_net_size", e.log2_net_size, nullptr);
            row(p, "effective_delta", e.effective_delta, nullptr);
        } else if (f == "deep-splitting") {
            const auto s = bounds::deep_splitting_bound(p.n, d, p.delta, p.B, p.mixing_steps(), p.log_base);
            row(p, "line1", s.line1, nullptr);
            row(p, "line2", s.line2, nullptr);
            row(p, "line3", s.line3, s.vacuous);
            row(p, "chain_holds", s.chain_12 && s.chain_23 ? 1.0 : 0.0, nullptr);
        } else if (f == "binomial-mixing") {
            const double c = a.c;
            const auto dd = static_cast<std::uint64_t>(d);
            const auto s = bounds::binomial_mixing(dd, a.lambda, [c](std::uint64_t j) { return -static_cast<double>(j) / c; });
            row(p, "sum", s.value, nullptr);
            row(p, "closed_form", bounds::binomial_mixing_closed_form(dd, a.lambda, c), nullptr);
            row(p, "simplified", bounds::binomial_mixing_simplified(dd, a.lambda, c), nullptr);
        } else if (f == "coupon") {
            const auto cc = bounds::coupon_collector(p.n, d);
            row(p, "coarse_bound", cc.coarse_bound, cc.coarse_bound >= 1.0);
            row(p, "exponential_form", cc.exponential_form, cc.exponential_form >= 1.0);
            row(p, "union_bound", cc.exact_union, cc.exact_union >= 1.0);
            row(p, "exact", cc.exact, nullptr);
        } else if (f == "fidelity") {
            const auto fi = bounds::fidelity_tracenorm(p.delta);
            row(p, "overlap_sq", fi.overlap_sq, nullptr);
            row(p, "delta_prime", fi.delta_prime, nullptr);
        } else {
            throw InputError("unknown formula '" + f + "'");
        }
    }
    emit(rec, cm);
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::vector<int> only;
    std::string fault;
};

int cmd_verify(const VerifyArgs& a, const Common& c, const ojson& cfg) {
    acceptance::Options o;
    o.seed = c.seed;
    o.workers = c.workers;
    if (!a.fault.empty() && a.fault != "conjugation-transpose") throw InputError("unknown fault '" + a.fault + "'");
    o.fault_conjugation_transpose = a.fault == "conjugation-transpose";
    RunRecord rec("verify", cfg, c.seed, {"id", "name", "passed", "asserted", "measured", "required"});
    const bool to_stdout = c.output.empty() || c.output == "-";
    const auto results = acceptance::run(o, a.only, [&](const acceptance::Result& r) {
        (to_stdout ? std::cerr : std::cout) << acceptance::line(r) << std::endl;
    });
    for (const auto& r : results) {
        rec.add_row(Provenance::Exact, {r.id, r.name, r.passed, r.asserted, r.measured, r.required});
    }
    emit(rec, c);
    return acceptance::all_passed(results) ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random quantum circuit moments, walks and bounds"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    std::map<CLI::App*, Common> commons;
    MomentsArgs moments;
    IdealArgs ideal;
    FourierArgs fourier;
    ConjectureArgs conj;
    F2MixArgs f2;
    SpectrumArgs spectrum;
    BoundsArgs bnd;
    VerifyArgs verify;
    ojson resolved;
    int code = kExitOk;
    std::map<CLI::App*, std::function<void()>> actions;

    auto* s = app.add_subcommand("moments", "Circuit moments E|<psi|U|0>|^{2t} with bound columns");
    s->add_option("--n", moments.n, "Qubits")->check(CLI::Range(2, kMaxDenseQubits));
    s->add_option("--t", moments.t, "Moment orders");
    s->add_option("--d", moments.d, "Gate counts");
    s->add_option("--trials", moments.trials, "Circuits per point");
    s->add_option("--measure", moments.measure, "Gate measure")->check(CLI::IsMember({"haar", "zeta"}));
    s->add_option("--state", moments.state, "Target state psi")->check(CLI::IsMember({"zero", "plus"}));
    add_common(s, commons[s]);
    actions[s] = [&, s] { cmd_moments(moments, commons[s], resolved); };

    s = app.add_subcommand("ideal-walk", "Ideal walk moments: exact, Monte Carlo, spectrum");
    s->add_option("--n", ideal.n, "Qubits");
    s->add_option("--t", ideal.t, "Moment orders");
    s->add_option("--m", ideal.m, "Rotation counts");
    s->add_option("--trials", ideal.trials, "Walks per point (0: exact only)");
    s->add_flag("--spectrum", ideal.spectrum, "Emit the eigenvalue table instead");
    add_common(s, commons[s]);
    actions[s] = [&, s] { cmd_ideal_walk(ideal, commons[s], resolved); };

    s = app.add_subcommand("fourier", "Parseval sweeps, low-support fractions, single pairs");
    s->add_option("--mode", fourier.mode, "parseval, low-support or pair");
    s->add_option("--n", fourier.n, "Qubits");
    s->add_option("--t", fourier.t, "Tuple lengths");
    s->add_option("--A", fourier.A, "Support threshold (low-support)");
    s->add_option("--trials", fourier.trials, "Sampled pairs (0: exhaustive)");
    s->add_option("--first", fourier.first, "First tuple (pair mode)");
    s->add_option("--second", fourier.second, "Second tuple (pair mode)");
    add_common(s, commons[s]);
    actions[s] = [&, s] { cmd_fourier(fourier, commons[s], resolved); };

    s = app.add_subcommand("conjecture", "Support tails Pr[|supp| < 2^n/n^c] for random tuple pairs");
    s->add_option("--n", conj.n, "Qubits");
    s->add_option("--t", conj.t, "Tuple lengths");
    s->add_option("--c", conj.c, "Threshold exponent");
    s->add_option("--trials", conj.trials, "Sampled pairs (0: exhaustive)");
    add_common(s, commons[s]);
    actions[s] = [&, s] { cmd_conjecture(conj, commons[s], resolved); };

    s = app.add_subcommand("f2mix", "CNOT walk mixing curves against the closed-form bound");
    s->add_option("--n", f2.n, "Qubits")->check(CLI::Range(2, kMaxExactZstringQubits));
    s->add_option("--k", f2.k, "Explicit step counts");
    s->add_option("--kmax", f2.kmax, "Sweep end when --k is absent");
    s->add_option("--stride", f2.stride, "Sweep stride");
    s->add_option("--diameter", f2.diameter, "Generator diameter; sets the rate to 1/(6n diam^2) (default: 1/(500 n^5))");
    s->add_flag("--zstring", f2.zstring, "Walk on Z-strings instead of the group");
    add_common(s, commons[s]);
    actions[s] = [&, s] { cmd_f2mix(f2, commons[s], resolved); };

    s = app.add_subcommand("spectrum", "Spectral gaps and moment-operator certificates");
    s->add_option("--kind", spectrum.kind, "f2-walk, moment-op or ideal");
    s->add_option("--n", spectrum.n, "Qubits");
    s->add_option("--t", spectrum.t, "Moment orders");
    s->add_option("--export", spectrum.export_stem, "Write operators as <stem>_{zeta,haar}_t<t>.{bin,json}");
    add_common(s, commons[s]);
    actions[s] = [&, s] { cmd_spectrum(spectrum, commons[s], resolved); };

    s = app.add_subcommand("bounds", "Evaluate a closed-form bound");
    s->add_option("--formula", bnd.formula,
                  "unitary, state, gateset-unitary, gateset-state, moment, gateset-moment, markov, epsnet, "
                  "deep-splitting, binomial-mixing, coupon, fidelity");
    s->add_option("--n", bnd.p.n, "Qubits");
    s->add_option("--d", bnd.d, "Gate counts");
    s->add_option("--t", bnd.p.t, "Moment order");
    s->add_option("--delta", bnd.p.delta, "Error parameter");
    s->add_option("--K", bnd.p.K, "Complexity constant (placeholder default)");
    s->add_option("--B", bnd.p.B, "Net base constant (placeholder default)");
    s->add_option("--C", bnd.p.C, "Gate-set constant for the unitary bound");
    s->add_option("--Cprime", bnd.p.Cprime, "Gate-set constant for the state bound");
    s->add_option("--C1", bnd.p.C1);
    s->add_option("--C2", bnd.p.C2);
    s->add_option("--C3", bnd.p.C3);
    s->add_option("--C4", bnd.p.C4);
    s->add_option("--k-mix", bnd.p.k_mix, "Mixing steps (0: 2000 n^7)");
    s->add_option("--gateset-size", bnd.p.gateset_size, "|K| for the union bound");
    s->add_option("--log-base", bnd.log_base, "2 or e")->check(CLI::IsMember({"2", "e"}));
    s->add_option("--R", bnd.R, "Gate count for the union bound");
    s->add_option("--moment", bnd.moment, "Moment value for the union bound");
    s->add_option("--c", bnd.c, "Decay scale for binomial-mixing");
    s->add_option("--lambda", bnd.lambda, "Gap for binomial-mixing");
    add_common(s, commons[s]);
    actions[s] = [&, s] { cmd_bounds(bnd, commons[s], resolved); };

    s = app.add_subcommand("verify", "Run the acceptance suite");
    s->add_option("--only", verify.only, "Criterion numbers");
    s->add_option("--inject-fault", verify.fault, "Mutation check: conjugation-transpose");
    commons[s].seed = acceptance::kDefaultSeed;
    add_common(s, commons[s]);
    actions[s] = [&, s] { code = cmd_verify(verify, commons[s], resolved); };

    // Lists take repeated flags or comma-separated values.
    for (CLI::App* sub : app.get_subcommands({})) {
        for (CLI::Option* opt : sub->get_options()) {
            if (opt->get_items_expected_max() > 1) opt->delimiter(',');
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        for (auto& [sub, action] : actions) {
            if (!sub->parsed()) continue;
            const Common& common = commons[sub];
            if (!common.config.empty()) cli::apply_config(*sub, cli::load_config_file(common.config));
            parse_format(common.format);
            resolved = cli::resolved_config(*sub);
            resolved["artifact_version"] = kArtifactVersion;
            action();
        }
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitVerify;
    }
    std::cerr << "wall time " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
              << " s\n";
    return code;
}
