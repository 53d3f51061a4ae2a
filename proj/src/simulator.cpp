#include "cv2x/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <span>
#include <thread>

#include "cv2x/channel.hpp"
#include "cv2x/errors.hpp"

namespace cv2x {

namespace {

constexpr int kMaxAttempts = 100;
constexpr std::uint64_t kClassifyBlock = 4096;
constexpr std::uint64_t kTrialBlock = 128;

struct Selection {
    AssociationSample sample;
    std::ptrdiff_t macro_index = -1;  // into the MBS list
    std::ptrdiff_t small_index = -1;  // into the typical-line SBS list
};

double shadow_at(std::span<const double> marks, std::size_t i) { return marks.empty() ? 1.0 : marks[i]; }

Selection select_servers(const SystemParams& p, std::span<const Point2> mbs, std::span<const double> mbs_shadow,
                         std::span<const double> sbs, std::span<const double> sbs_shadow) {
    Selection s;
    double best_m = 0.0;
    for (std::size_t i = 0; i < mbs.size(); ++i) {
        const double d2 = mbs[i].x * mbs[i].x + mbs[i].y * mbs[i].y;
        const double v = shadow_at(mbs_shadow, i) * path_loss_sq(d2, p.alpha_m);
        if (v > best_m) {
            best_m = v;
            s.macro_index = static_cast<std::ptrdiff_t>(i);
        }
    }
    double best_s = 0.0;
    for (std::size_t i = 0; i < sbs.size(); ++i) {
        const double v = shadow_at(sbs_shadow, i) * path_loss_sq(sbs[i] * sbs[i], p.alpha_s);
        if (v > best_s) {
            best_s = v;
            s.small_index = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (s.macro_index < 0 && s.small_index < 0) throw DegenerateDistance("no candidate server in the disk");

    const double inf = std::numeric_limits<double>::infinity();
    AssociationSample& a = s.sample;
    a.x_macro = inf;
    a.x_small = inf;
    a.x_macro_eff = inf;
    a.x_small_eff = inf;
    if (s.macro_index >= 0) {
        const Point2 q = mbs[s.macro_index];
        a.x_macro = std::hypot(q.x, q.y);
        a.x_macro_eff = std::pow(best_m, -1.0 / p.alpha_m);
        if (a.x_macro < kMinLinkDistance) throw DegenerateDistance("MBS at the typical vehicle");
    }
    if (s.small_index >= 0) {
        a.x_small = std::abs(sbs[s.small_index]);
        a.x_small_eff = std::pow(best_s, -1.0 / p.alpha_s);
        if (a.x_small < kMinLinkDistance) throw DegenerateDistance("SBS at the typical vehicle");
    }
    const DerivedRatios r = derive_ratios(p);
    // Ties go to the MBS.
    a.dl_macro = r.a_ms * best_m >= best_s;
    a.ul_macro = r.b_ms * best_m >= best_s;
    if (a.ul_macro) {
        a.assoc_case = a.dl_macro ? AssociationCase::Case1 : AssociationCase::Case3;
    } else {
        a.assoc_case = a.dl_macro ? AssociationCase::Case2 : AssociationCase::Case4;
    }
    a.max_dl_biased_power =
        std::max(p.p_m * p.g_m * p.b_m * best_m, p.p_s * p.g_s0 * p.b_s * best_s);
    return s;
}

TrialStreams streams_for(std::uint64_t master_seed, std::uint64_t index, int attempt) {
    if (attempt == 0) return TrialStreams::for_trial(master_seed, index);
    return TrialStreams::for_trial(derive_seed(master_seed, static_cast<std::uint64_t>(attempt), 0x5eedULL), index);
}

// Downlink interference at the origin from every BS except the server.
double dl_interference(const SystemParams& p, const NetworkRealization& r, Rng& rng, std::ptrdiff_t skip_mbs,
                       std::ptrdiff_t skip_sbs_global) {
    double total = 0.0;
    const double pg_m = p.p_m * p.g_m;
    for (std::size_t i = 0; i < r.mbs.size(); ++i) {
        if (static_cast<std::ptrdiff_t>(i) == skip_mbs) continue;
        const double d2 = r.mbs[i].x * r.mbs[i].x + r.mbs[i].y * r.mbs[i].y;
        total += pg_m * sample_nakagami_power(p.m_m, rng) * shadow_at(r.mbs_shadow, i) * path_loss_sq(d2, p.alpha_m);
    }
    const std::span<const double> shadows = r.sbs_shadow;
    for (std::size_t l = 0; l < r.lines.size(); ++l) {
        const bool typical = l == r.typical_line;
        const double pg = p.p_s * (typical ? p.g_s0 : p.g_s1);
        const int m = typical ? p.m_s0 : p.m_s1;
        const std::size_t base = r.sbs.first_index(l);
        const std::span<const double> pts = r.sbs.on(l);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const std::size_t g = base + k;
            if (static_cast<std::ptrdiff_t>(g) == skip_sbs_global) continue;
            const double d2 = r.lines[l].distance_sq(pts[k]);
            total += pg * sample_nakagami_power(m, rng) * shadow_at(shadows, g) * path_loss_sq(d2, p.alpha_s);
        }
    }
    return total;
}

// Uplink interference evaluated at the typical vehicle: typical-line vehicles beyond the
// serving distance plus every other-line vehicle.
double ul_interference(const SystemParams& p, const NetworkRealization& r, Rng& rng, bool to_macro,
                       double serving_distance) {
    const double alpha = to_macro ? p.alpha_m : p.alpha_s;
    const double pg0 = p.p_v * (to_macro ? p.g_v1 : p.g_v0);
    const int m0 = to_macro ? p.m_v1 : p.m_v0;
    const ShadowingSpec& chi0 = to_macro ? p.shadowing.m : p.shadowing.s0;
    const ShadowingSpec& chi1 = to_macro ? p.shadowing.m : p.shadowing.s1;
    const double pg1 = p.p_v * p.g_v1;
    double total = 0.0;
    for (std::size_t l = 0; l < r.lines.size(); ++l) {
        const bool typical = l == r.typical_line;
        for (double t : r.vehicles.on(l)) {
            if (typical) {
                if (std::abs(t) <= serving_distance) continue;
                total += pg0 * sample_nakagami_power(m0, rng) * sample_shadowing(chi0, rng) *
                         path_loss_sq(t * t, alpha);
            } else {
                total += pg1 * sample_nakagami_power(p.m_v1, rng) * sample_shadowing(chi1, rng) *
                         path_loss_sq(r.lines[l].distance_sq(t), alpha);
            }
        }
    }
    return total;
}

struct Neumaier {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    void add(const Neumaier& o) {
        add(o.sum);
        add(o.c);
    }
    double value() const { return sum + c; }
};

struct CaseSums {
    std::uint64_t n = 0;
    Neumaier ul, ul2, dl, dl2, ulc, ulc2, dec2, cou2;
    void add(const TrialOutcome& o) {
        ++n;
        ul.add(o.se_ul);
        ul2.add(o.se_ul * o.se_ul);
        dl.add(o.se_dl);
        dl2.add(o.se_dl * o.se_dl);
        ulc.add(o.se_ul_coupled);
        ulc2.add(o.se_ul_coupled * o.se_ul_coupled);
        dec2.add((o.se_ul + o.se_dl) * (o.se_ul + o.se_dl));
        cou2.add((o.se_ul_coupled + o.se_dl) * (o.se_ul_coupled + o.se_dl));
    }
    void add(const CaseSums& o) {
        n += o.n;
        ul.add(o.ul);
        ul2.add(o.ul2);
        dl.add(o.dl);
        dl2.add(o.dl2);
        ulc.add(o.ulc);
        ulc2.add(o.ulc2);
        dec2.add(o.dec2);
        cou2.add(o.cou2);
    }
};

// Runs job(block) for block = 0..blocks-1 on `workers` threads.
template <typename Job>
void for_each_block(std::uint64_t blocks, unsigned workers, Job job) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(blocks, 1))));
    if (workers == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) job(b);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t b = next.fetch_add(1);
                if (b >= blocks || failed.load()) return;
                try {
                    job(b);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

double stderr_of(const Neumaier& sum, const Neumaier& sum_sq, std::uint64_t n) {
    if (n < 2) return 0.0;
    const double mean = sum.value() / n;
    const double var = std::max(0.0, (sum_sq.value() - n * mean * mean) / (n - 1));
    return std::sqrt(var / n);
}

}  // namespace

AssociationSample classify(const SystemParams& p, const AssociationLayer& layer) {
    return select_servers(p, layer.mbs, layer.mbs_shadow, layer.typical_sbs, layer.typical_sbs_shadow).sample;
}

TrialOutcome run_trial(const SystemParams& p, TrialStreams& streams, NetworkRealization& r) {
    sample_realization(p, streams, r);
    const std::size_t base = r.sbs.first_index(r.typical_line);
    const std::span<const double> typical_shadow =
        r.sbs_shadow.empty() ? std::span<const double>{}
                             : std::span<const double>(r.sbs_shadow).subspan(base, r.typical_sbs().size());
    const Selection sel = select_servers(p, r.mbs, r.mbs_shadow, r.typical_sbs(), typical_shadow);
    const AssociationSample& a = sel.sample;
    Rng& rng = streams.environment;

    TrialOutcome o;
    o.assoc_case = a.assoc_case;
    o.x_dl = a.x_dl();
    o.x_ul = a.x_ul();

    const double chi_m = sel.macro_index >= 0 ? shadow_at(r.mbs_shadow, sel.macro_index) : 1.0;
    const double chi_s = sel.small_index >= 0 ? shadow_at(typical_shadow, sel.small_index) : 1.0;

    if (a.dl_macro) {
        const double signal = p.p_m * p.g_m * sample_nakagami_power(p.m_m, rng) * chi_m *
                              path_loss_sq(a.x_macro * a.x_macro, p.alpha_m);
        o.sinr_dl = signal / dl_interference(p, r, rng, sel.macro_index, -1);
    } else {
        const double signal = p.p_s * p.g_s0 * sample_nakagami_power(p.m_s0, rng) * chi_s *
                              path_loss_sq(a.x_small * a.x_small, p.alpha_s);
        o.sinr_dl = signal / dl_interference(p, r, rng, -1, static_cast<std::ptrdiff_t>(base) + sel.small_index);
    }

    const auto ul_to_macro = [&] {
        const double signal = p.p_v * p.g_v1 * sample_nakagami_power(p.m_v1, rng) * chi_m *
                              path_loss_sq(a.x_macro * a.x_macro, p.alpha_m);
        return signal / ul_interference(p, r, rng, true, a.x_macro);
    };
    const auto ul_to_small = [&] {
        const double signal = p.p_v * p.g_v0 * sample_nakagami_power(p.m_v0, rng) * chi_s *
                              path_loss_sq(a.x_small * a.x_small, p.alpha_s);
        return signal / ul_interference(p, r, rng, false, a.x_small);
    };
    o.sinr_ul = a.ul_macro ? ul_to_macro() : ul_to_small();
    if (a.ul_macro == a.dl_macro) {
        o.sinr_ul_coupled = o.sinr_ul;
    } else {
        o.sinr_ul_coupled = a.dl_macro ? ul_to_macro() : ul_to_small();
    }
    o.se_dl = std::log1p(o.sinr_dl);
    o.se_ul = std::log1p(o.sinr_ul);
    o.se_ul_coupled = std::log1p(o.sinr_ul_coupled);
    return o;
}

TrialOutcome run_trial(const SystemParams& p, std::uint64_t master_seed, std::uint64_t index) {
    NetworkRealization scratch;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        TrialStreams s = streams_for(master_seed, index, attempt);
        try {
            return run_trial(p, s, scratch);
        } catch (const DegenerateDistance&) {
        }
    }
    throw DegenerateDistance("trial stayed degenerate after repeated redraws");
}

AssociationSample classify_trial(const SystemParams& p, std::uint64_t master_seed, std::uint64_t index) {
    AssociationLayer layer;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        TrialStreams s = streams_for(master_seed, index, attempt);
        sample_association_layer(p, s.association, layer);
        try {
            return classify(p, layer);
        } catch (const DegenerateDistance&) {
        }
    }
    throw DegenerateDistance("trial stayed degenerate after repeated redraws");
}

CampaignStats run_campaign(const SystemParams& p, const CampaignOptions& opt) {
    if (opt.trials < 1) throw ConfigError("a campaign needs at least one trial");
    validate(p);
    derive_ratios(p);

    // Pass 1: classify every trial from its association layer.
    const auto classify_range = [&](std::uint64_t first, std::uint64_t count, std::vector<AssociationSample>& out) {
        out.resize(count);
        const std::uint64_t blocks = (count + kClassifyBlock - 1) / kClassifyBlock;
        for_each_block(blocks, opt.workers, [&](std::uint64_t b) {
            const std::uint64_t lo = b * kClassifyBlock;
            const std::uint64_t hi = std::min(count, lo + kClassifyBlock);
            for (std::uint64_t i = lo; i < hi; ++i) out[i] = classify_trial(p, opt.master_seed, first + i);
        });
    };
    std::vector<AssociationSample> samples;
    classify_range(0, opt.trials, samples);

    CampaignStats st;
    st.trials = opt.trials;
    st.master_seed = opt.master_seed;
    for (const AssociationSample& s : samples) ++st.cases[static_cast<int>(s.assoc_case) - 1].count;
    for (CaseStats& c : st.cases) {
        c.frequency = static_cast<double>(c.count) / opt.trials;
        c.frequency_stderr = std::sqrt(c.frequency * (1.0 - c.frequency) / opt.trials);
    }

    // Pick the trials whose SE is simulated.
    const std::uint64_t quota = opt.se_samples_per_case == 0 ? opt.trials : opt.se_samples_per_case;
    std::array<std::uint64_t, 4> taken{};
    std::vector<std::uint64_t> chosen;
    for (std::uint64_t i = 0; i < opt.trials; ++i) {
        const int c = static_cast<int>(samples[i].assoc_case) - 1;
        if (taken[c] < quota) {
            ++taken[c];
            chosen.push_back(i);
        }
    }
    const auto short_of_quota = [&] {
        for (int c = 0; c < 4; ++c) {
            if (st.cases[c].count > 0 && taken[c] < quota) return true;
        }
        return false;
    };
    std::uint64_t next = opt.trials;
    std::vector<AssociationSample> extra;
    while (opt.se_samples_per_case > 0 && short_of_quota() && next < opt.trials + opt.max_topup_trials) {
        const std::uint64_t count = std::min<std::uint64_t>(16 * kClassifyBlock, opt.trials + opt.max_topup_trials - next);
        classify_range(next, count, extra);
        for (std::uint64_t k = 0; k < count; ++k) {
            const int c = static_cast<int>(extra[k].assoc_case) - 1;
            if (st.cases[c].count > 0 && taken[c] < quota) {
                ++taken[c];
                chosen.push_back(next + k);
            }
        }
        next += count;
    }
    if (opt.keep_samples) {
        st.samples = std::move(samples);
    } else {
        samples.clear();
        samples.shrink_to_fit();
    }

    // Pass 2: full trials, summed per fixed block and reduced in block order.
    const std::uint64_t blocks = (chosen.size() + kTrialBlock - 1) / kTrialBlock;
    std::vector<std::array<CaseSums, 4>> partial(blocks);
    for_each_block(blocks, opt.workers, [&](std::uint64_t b) {
        NetworkRealization scratch;
        const std::uint64_t lo = b * kTrialBlock;
        const std::uint64_t hi = std::min<std::uint64_t>(chosen.size(), lo + kTrialBlock);
        for (std::uint64_t k = lo; k < hi; ++k) {
            const std::uint64_t index = chosen[k];
            TrialOutcome o;
            bool done = false;
            for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
                TrialStreams s = streams_for(opt.master_seed, index, attempt);
                try {
                    o = run_trial(p, s, scratch);
                    done = true;
                } catch (const DegenerateDistance&) {
                }
            }
            if (!done) throw DegenerateDistance("trial stayed degenerate after repeated redraws");
            partial[b][static_cast<int>(o.assoc_case) - 1].add(o);
        }
    });
    std::array<CaseSums, 4> sums{};
    for (const auto& block : partial) {
        for (int c = 0; c < 4; ++c) sums[c].add(block[c]);
    }

    double dec = 0.0, cou = 0.0, dec_var = 0.0, cou_var = 0.0;
    for (int c = 0; c < 4; ++c) {
        CaseStats& cs = st.cases[c];
        const CaseSums& s = sums[c];
        cs.se_samples = s.n;
        if (s.n == 0) continue;
        cs.se_ul = s.ul.value() / s.n;
        cs.se_dl = s.dl.value() / s.n;
        cs.se_ul_coupled = s.ulc.value() / s.n;
        cs.se_ul_stderr = stderr_of(s.ul, s.ul2, s.n);
        cs.se_dl_stderr = stderr_of(s.dl, s.dl2, s.n);
        cs.se_ul_coupled_stderr = stderr_of(s.ulc, s.ulc2, s.n);
        dec += cs.frequency * (cs.se_ul + cs.se_dl);
        cou += cs.frequency * (cs.se_ul_coupled + cs.se_dl);
        Neumaier dsum = s.ul;
        dsum.add(s.dl);
        Neumaier csum = s.ulc;
        csum.add(s.dl);
        const double de = stderr_of(dsum, s.dec2, s.n);
        const double ce = stderr_of(csum, s.cou2, s.n);
        dec_var += cs.frequency * cs.frequency * de * de;
        cou_var += cs.frequency * cs.frequency * ce * ce;
    }
    st.system_se_decoupled = dec;
    st.system_se_coupled = cou;
    st.system_se_decoupled_stderr = std::sqrt(dec_var);
    st.system_se_coupled_stderr = std::sqrt(cou_var);
    return st;
}

double sample_interference(const EmpiricalFieldSpec& spec, Rng& rng) {
    const InterferenceField& f = spec.field;
    if (f.density <= 0.0) return 0.0;
    if (!std::isfinite(f.outer)) throw ConfigError("simulated fields need a finite outer radius");
    const auto contribution = [&](double r) {
        return f.power_gain * sample_nakagami_power(f.fading_shape, rng) * path_loss_sq(r * r, f.alpha);
    };
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double total = 0.0;
    if (f.kind == FieldKind::Line1D) {
        double start = f.exclusion;
        if (f.nonempty_window_end > f.exclusion) {
            const double w = f.nonempty_window_end;
            std::poisson_distribution<long long> window(2.0 * f.density * (w - f.exclusion));
            long long n = 0;
            while (n == 0) n = window(rng);
            for (long long i = 0; i < n; ++i) total += contribution(f.exclusion + (w - f.exclusion) * unit(rng));
            start = w;
        }
        if (f.outer > start) {
            const long long n = std::poisson_distribution<long long>(2.0 * f.density * (f.outer - start))(rng);
            for (long long i = 0; i < n; ++i) total += contribution(start + (f.outer - start) * unit(rng));
        }
        return total;
    }
    const double e2 = f.exclusion * f.exclusion;
    const double o2 = f.outer * f.outer;
    if (spec.line_density <= 0.0) {
        const long long n = std::poisson_distribution<long long>(std::numbers::pi * f.density * (o2 - e2))(rng);
        for (long long i = 0; i < n; ++i) total += contribution(std::sqrt(e2 + (o2 - e2) * unit(rng)));
        return total;
    }
    const double per_line = f.density / (0.5 * spec.line_count_factor * spec.line_density);
    const std::vector<Line> lines = sample_plp(spec.line_density, f.outer, rng, spec.line_count_factor);
    for (const Line& l : lines) {
        if (l.is_typical) continue;
        for (double t : sample_ppp_on_line(l, per_line, f.outer, rng)) {
            const double d2 = l.distance_sq(t);
            if (d2 > e2) total += contribution(std::sqrt(d2));
        }
    }
    return total;
}

EmpiricalEstimate empirical_laplace(const EmpiricalFieldSpec& spec, double j, std::uint64_t trials,
                                    std::uint64_t seed) {
    if (trials == 0) return {};
    Neumaier sum, sum_sq;
    for (std::uint64_t i = 0; i < trials; ++i) {
        Rng rng(derive_seed(seed, i, 3));
        const double v = j == 0.0 ? 1.0 : std::exp(-j * sample_interference(spec, rng));
        sum.add(v);
        sum_sq.add(v * v);
    }
    return {sum.value() / trials, stderr_of(sum, sum_sq, trials)};
}

}  // namespace cv2x
