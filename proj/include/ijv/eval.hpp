//
// eval.hpp
//
// DICE overlap and CSA-series comparison against ground truth.
//

#pragma once

#include "ijv/tracker.hpp"

namespace ijv {

struct EvalSummary {
    std::vector<double> per_frame_dice;
    double mean_dice = 0.0;
    std::vector<double> csa_pred;
    std::vector<double> csa_truth;
    double pearson_r = 0.0;
    bool degenerate_correlation = false;  // a series had zero variance
    std::size_t frames_evaluated = 0;

    // CSV: frame,dice,csa_pred,csa_truth
    std::string to_csv() const;
    std::string summary_line() const;
};

// 2 |a ∩ m| / (|a| + |m|). Errors on dimension mismatch or when both
// masks are empty.
double dice(const Mask& a, const Mask& m);

// Per-frame DICE of the rasterized predicted contours against the truth
// masks; frames where both regions are below 5 px^2 score 1.0 (correct
// collapse detection); Pearson correlation of the CSA series.
EvalSummary summarize(const TrackingRecord& record,
                      const std::vector<Mask>& truth_masks,
                      const std::vector<double>& truth_csa);

double pearson(const std::vector<double>& a, const std::vector<double>& b,
               bool* degenerate);

}  // namespace ijv
