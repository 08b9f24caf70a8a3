#include "ijv/eval.hpp"

#include <cmath>
#include <cstdio>

#include "ijv/geometry.hpp"

namespace ijv {

double dice(const Mask& a, const Mask& m) {
    if (a.width != m.width || a.height != m.height)
        throw Error("dice: mask dimensions differ");
    std::size_t na = 0, nm = 0, ni = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        na += a.bits[i] != 0;
        nm += m.bits[i] != 0;
        ni += (a.bits[i] != 0 && m.bits[i] != 0);
    }
    if (na + nm == 0) throw Error("dice: both masks are empty (undefined)");
    return 2.0 * static_cast<double>(ni) / static_cast<double>(na + nm);
}

double pearson(const std::vector<double>& a, const std::vector<double>& b,
               bool* degenerate) {
    if (a.size() != b.size() || a.empty())
        throw Error("pearson: length mismatch");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa <= 0.0 || sbb <= 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    if (degenerate) *degenerate = false;
    return sab / std::sqrt(saa * sbb);
}

EvalSummary summarize(const TrackingRecord& record,
                      const std::vector<Mask>& truth_masks,
                      const std::vector<double>& truth_csa) {
    const std::size_t n = record.results.size();
    if (truth_masks.size() != n || truth_csa.size() != n)
        throw Error("summarize: frame count mismatch");
    if (n == 0) throw Error("summarize: empty record");

    EvalSummary s;
    s.frames_evaluated = n;
    s.per_frame_dice.reserve(n);
    s.csa_pred.reserve(n);
    s.csa_truth = truth_csa;

    double dice_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const FrameResult& r = record.results[k];
        const Mask& truth = truth_masks[k];

        Mask pred(truth.width, truth.height);
        if ((r.status == FrameStatus::Ok ||
             r.status == FrameStatus::Collapsed) &&
            r.contour.size() >= 3)
            pred = rasterize_contour(r.contour, truth.width, truth.height);

        const std::size_t pa = pred.count();
        const std::size_t ta = truth.count();
        double d;
        if (pa < 5 && ta < 5) {
            d = 1.0;  // collapsed against collapsed
        } else {
            std::size_t inter = 0;
            for (std::size_t i = 0; i < pred.bits.size(); ++i)
                inter += (pred.bits[i] != 0 && truth.bits[i] != 0);
            d = 2.0 * static_cast<double>(inter) /
                static_cast<double>(pa + ta);
        }
        s.per_frame_dice.push_back(d);
        dice_sum += d;
        s.csa_pred.push_back(r.csa);
    }
    s.mean_dice = dice_sum / static_cast<double>(n);
    s.pearson_r = pearson(s.csa_pred, s.csa_truth, &s.degenerate_correlation);
    return s;
}

std::string EvalSummary::to_csv() const {
    std::string out = "frame,dice,csa_pred,csa_truth\n";
    char buf[160];
    for (std::size_t k = 0; k < per_frame_dice.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.6f,%.6f\n", k,
                      per_frame_dice[k], csa_pred[k], csa_truth[k]);
        out += buf;
    }
    return out;
}

std::string EvalSummary::summary_line() const {
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "frames=%zu mean_dice=%.6f pearson_r=%.6f%s\n",
                  frames_evaluated, mean_dice, pearson_r,
                  degenerate_correlation ? " (zero-variance series)" : "");
    return buf;
}

}  // namespace ijv
