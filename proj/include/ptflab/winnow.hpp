#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "ptflab/boolean.hpp"
#include "ptflab/poly.hpp"
#include "ptflab/ptf.hpp"

namespace ptflab {

// All monomials of degree 0..d over n variables in (degree, lex) order;
// the empty monomial is the constant-1 feature. Feature j is stored as a
// variable mask, so n <= 64 here (plenty for desk scale).
struct FeatureMap {
    std::uint32_t n = 0;
    unsigned d = 0;
    std::vector<std::uint64_t> masks;

    FeatureMap() = default;
    FeatureMap(std::uint32_t n_, unsigned d_) : n(n_), d(d_) {
        if (n > 64) throw std::invalid_argument("feature map limited to n <= 64");
        masks.push_back(0);
        std::vector<std::uint32_t> combo;
        for (unsigned deg = 1; deg <= d && deg <= n; ++deg) {
            combo.assign(deg, 0);
            for (unsigned i = 0; i < deg; ++i) combo[i] = i;
            while (true) {
                std::uint64_t m = 0;
                for (auto v : combo) m |= std::uint64_t(1) << v;
                masks.push_back(m);
                // next lexicographic combination
                int i = int(deg) - 1;
                while (i >= 0 && combo[i] == n - deg + i) --i;
                if (i < 0) break;
                ++combo[i];
                for (unsigned j = unsigned(i) + 1; j < deg; ++j)
                    combo[j] = combo[j - 1] + 1;
            }
        }
    }

    std::size_t count() const { return masks.size(); }
};

inline std::vector<std::uint8_t> expand_features(const BitVec& x, const FeatureMap& fm) {
    check_dim(x.size(), fm.n);
    std::uint64_t xm = 0;
    for (std::uint32_t i = 0; i < fm.n; ++i)
        if (x[i]) xm |= std::uint64_t(1) << i;
    std::vector<std::uint8_t> z(fm.count());
    for (std::size_t j = 0; j < fm.count(); ++j)
        z[j] = (fm.masks[j] & xm) == fm.masks[j];
    return z;
}

struct WinnowConfig {
    unsigned d = 1;
    Rat alpha = Rat(3, 2);
    std::optional<Rat> theta; // defaults to the feature count N
};

// Balanced Winnow over the expanded features: one positive weight pair per
// feature, promote/demote active features by alpha on mistakes only.
struct WinnowState {
    FeatureMap fm;
    Rat alpha;
    Rat theta;
    std::uint64_t mistakes = 0;
    std::vector<Rat> w_pos, w_neg;
    std::vector<Rat> diff;      // cached w+ - w-
    std::vector<double> diff_d; // double shadow for fast scans
    std::vector<double> mag_d;  // |w+| + |w-| shadow, for error bounds

    WinnowState(FeatureMap fm_, const WinnowConfig& cfg)
        : fm(std::move(fm_)), alpha(cfg.alpha) {
        if (!(alpha > 1)) throw std::invalid_argument("winnow: alpha > 1 required");
        theta = cfg.theta.value_or(Rat(long(fm.count())));
        w_pos.assign(fm.count(), Rat(1));
        w_neg.assign(fm.count(), Rat(1));
        diff.assign(fm.count(), Rat(0));
        diff_d.assign(fm.count(), 0.0);
        mag_d.assign(fm.count(), 2.0);
    }

    Rat margin_mask(std::uint64_t xm) const {
        Rat s = 0;
        for (std::size_t j = 0; j < fm.count(); ++j)
            if ((fm.masks[j] & xm) == fm.masks[j]) s += diff[j];
        return s;
    }

    // predict +1 iff sum of active (w+ - w-) >= theta; initial all-ones
    // state sums to 0 < theta, so ties and the first trial predict -1
    int predict_mask(std::uint64_t xm) const {
        return margin_mask(xm) >= theta ? +1 : -1;
    }

    int predict(const std::vector<std::uint8_t>& z) const {
        Rat s = 0;
        for (std::size_t j = 0; j < z.size(); ++j)
            if (z[j]) s += diff[j];
        return s >= theta ? +1 : -1;
    }

    void update_mask(std::uint64_t xm, int y_true) {
        if (predict_mask(xm) == y_true) return;
        ++mistakes;
        for (std::size_t j = 0; j < fm.count(); ++j) {
            if ((fm.masks[j] & xm) != fm.masks[j]) continue;
            if (y_true > 0) {
                w_pos[j] *= alpha;
                w_neg[j] /= alpha;
            } else {
                w_pos[j] /= alpha;
                w_neg[j] *= alpha;
            }
            diff[j] = w_pos[j] - w_neg[j];
            diff_d[j] = diff[j].get_d();
            mag_d[j] = w_pos[j].get_d() + w_neg[j].get_d();
        }
    }

    void update(const BitVec& x, int y_true) {
        std::uint64_t xm = 0;
        for (std::uint32_t i = 0; i < fm.n; ++i)
            if (x[i]) xm |= std::uint64_t(1) << i;
        update_mask(xm, y_true);
    }

    // Fast sign with an exact fallback when the double sum is too close to
    // call. Used only by the exhaustive teacher's scans.
    int predict_mask_fast(std::uint64_t xm) const {
        double s = 0, mag = 0;
        for (std::size_t j = 0; j < fm.count(); ++j) {
            if ((fm.masks[j] & xm) != fm.masks[j]) continue;
            s += diff_d[j];
            mag += mag_d[j];
        }
        double slack = s - theta.get_d();
        double err = mag * 1e-12 + 1e-9;
        if (std::abs(slack) > err && std::isfinite(slack))
            return slack >= 0 ? +1 : -1;
        return predict_mask(xm);
    }
};

enum class Teacher { iid_uniform, adversarial_exhaustive };

struct MistakeRecord {
    std::uint64_t trials = 0;
    std::uint64_t mistakes = 0;
    std::vector<std::uint64_t> mistake_trials; // 1-based trial indices
    bool final_consistent = false;
    bool consistency_checked = false;
    unsigned d = 0;
    Rat alpha;
    Rat theta;
    std::uint64_t seed = 0;
};

inline std::uint64_t bit_reverse(std::uint64_t m, unsigned n) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < n; ++i)
        if (m & (std::uint64_t(1) << i)) r |= std::uint64_t(1) << (n - 1 - i);
    return r;
}

// Online protocol. The adversarial teacher scans {0,1}^n in lexicographic
// order (x_1 the most significant coordinate) and feeds the first input the
// current hypothesis gets wrong, until none exists or max_trials runs out.
inline MistakeRecord run_online(const std::function<int(std::uint64_t)>& concept_fn,
                                std::uint32_t n, const WinnowConfig& cfg,
                                Teacher teacher, std::uint64_t max_trials,
                                std::uint64_t seed) {
    WinnowState st(FeatureMap(n, cfg.d), cfg);
    MistakeRecord rec;
    rec.d = cfg.d;
    rec.alpha = st.alpha;
    rec.theta = st.theta;
    rec.seed = seed;

    if (teacher == Teacher::adversarial_exhaustive) {
        if (n > exhaustion_limit())
            throw std::invalid_argument("adversarial teacher: n over exhaustion limit");
        const std::uint64_t size = std::uint64_t(1) << n;
        while (rec.trials < max_trials) {
            std::optional<std::uint64_t> bad;
            for (std::uint64_t i = 0; i < size; ++i) {
                std::uint64_t xm = bit_reverse(i, n);
                if (st.predict_mask_fast(xm) != concept_fn(xm)) {
                    bad = xm;
                    break;
                }
            }
            if (!bad) {
                rec.final_consistent = true;
                rec.consistency_checked = true;
                break;
            }
            ++rec.trials;
            rec.mistake_trials.push_back(rec.trials);
            st.update_mask(*bad, concept_fn(*bad));
        }
    } else {
        std::mt19937_64 g(seed);
        std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t(1) << n) - 1);
        for (std::uint64_t t = 1; t <= max_trials; ++t) {
            std::uint64_t xm = dist(g);
            ++rec.trials;
            int y = concept_fn(xm);
            if (st.predict_mask(xm) != y) {
                rec.mistake_trials.push_back(t);
                st.update_mask(xm, y);
            }
        }
        if (n <= exhaustion_limit()) {
            rec.consistency_checked = true;
            rec.final_consistent = true;
            for (std::uint64_t xm = 0; xm < (std::uint64_t(1) << n); ++xm)
                if (st.predict_mask_fast(xm) != concept_fn(xm)) {
                    rec.final_consistent = false;
                    break;
                }
        }
    }
    rec.mistakes = st.mistakes;
    return rec;
}

// Learner configuration under which the composed construction's mistake
// bound applies to length-k lists: d is the construction's degree bound.
inline WinnowConfig expanded_winnow_for_list(std::size_t k, std::uint32_t /*n*/) {
    WinnowConfig cfg;
    if (k <= 1) {
        cfg.d = 1;
    } else {
        unsigned h = main_ptf_block_len(k);
        if (h > k) h = unsigned(k);
        cfg.d = compose_degree_bound(h);
    }
    return cfg;
}

} // namespace ptflab
