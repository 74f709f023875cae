#pragma once

#include <cstdint>
#include <vector>

#include "demograph/matrix.hpp"

namespace demograph {

enum class Algorithm : std::uint8_t {
  logreg_l1,             // min ||w||_1 + C * sum log(1 + exp(-y w^T x))
  linear_svm_l1loss,     // min 1/2 w^T w + C * sum max(1 - y w^T x, 0)
  multinomial_logistic,  // min ||W||_1 + C * sum cross-entropy(softmax(Wx))
};

struct TrainOptions {
  int max_epochs = 1000;
  // Stop when the monitored objective's relative change drops below tol.
  double tol = 1e-8;
  // Permutation stream for the SVM's coordinate sweeps; fixed seed + fixed
  // data gives bit-identical models.
  std::uint64_t seed = 1;
};

struct LinearModel {
  Algorithm algorithm = Algorithm::logreg_l1;
  int n_classes = 2;
  std::uint32_t source_cols = 0;            // width of the matrix it was fit on
  std::vector<std::uint32_t> feature_cols;  // selected columns, ascending
  // Binary: one weight per selected column. Multiclass: n_classes rows of
  // selected-column weights, row-major.
  std::vector<double> weights;
  std::vector<double> bias;  // size 1 (binary) or n_classes
  // Margin-to-probability calibration for the SVM (logistic fit on training
  // margins); unused by the logistic models.
  double platt_a = 1.0;
  double platt_b = 0.0;
};

struct TrainResult {
  LinearModel model;
  // One entry per epoch, non-increasing: the proximal trainers log the
  // penalized primal objective, the SVM logs the negated dual.
  std::vector<double> objective_trace;
  bool converged = false;
};

// Univariate ANOVA F-statistic of each column against the label grouping,
// over the given row subset. Columns constant within every group score 0;
// zero within-group variance with real between-group spread scores +inf.
std::vector<double> anova_f_scores(const RowMatrix& m,
                                   const std::vector<std::uint32_t>& rows,
                                   const std::vector<int>& y);

// Indices of the k highest-F columns, returned ascending (score ties break
// toward the smaller column index). Throws DataError when k <= 0 or
// k > column count.
std::vector<std::uint32_t> select_top_k_features(
    const RowMatrix& m, const std::vector<std::uint32_t>& rows,
    const std::vector<int>& y, int k);

// Dense copy of the given rows and columns, in the given order.
RowMatrix gather(const RowMatrix& m, const std::vector<std::uint32_t>& rows,
                 const std::vector<std::uint32_t>& cols);

// Smooth losses and gradients used by the trainers, exposed so tests can
// check the analytic gradients against finite differences.
//
// Binary: params = [w_0..w_{k-1}, bias], y entries in {-1, +1} aligned with
// Xk rows; returns C * sum log1p(exp(-y (w^T x + b))).
double logistic_smooth_loss(const RowMatrix& Xk, const std::vector<int>& y,
                            const std::vector<double>& params, double C,
                            std::vector<double>* grad);

// Multiclass: params = [W row-major n_classes x k, then n_classes biases],
// y entries in [0, n_classes); returns C * sum -log softmax_y(Wx + b).
double multinomial_smooth_loss(const RowMatrix& Xk, const std::vector<int>& y,
                               int n_classes, const std::vector<double>& params,
                               double C, std::vector<double>* grad);

// Monotone proximal-gradient training (objective never increases across
// epochs). `y` holds one entry per matrix row; only `rows` are used.
// Both classes must appear in the training rows.
TrainResult train_logreg_l1(const RowMatrix& m,
                            const std::vector<std::uint32_t>& rows,
                            const std::vector<int>& y,
                            const std::vector<std::uint32_t>& cols, double C,
                            const TrainOptions& opt = {});

// Dual coordinate descent on the L1-loss SVM with an augmented (penalized)
// bias coordinate. Probabilities come from a logistic calibration fit on
// the training margins.
TrainResult train_linear_svm(const RowMatrix& m,
                             const std::vector<std::uint32_t>& rows,
                             const std::vector<int>& y,
                             const std::vector<std::uint32_t>& cols, double C,
                             const TrainOptions& opt = {});

// Softmax cross-entropy with L1-penalized weights (biases unpenalized),
// same monotone proximal scheme as the binary trainer.
TrainResult train_multinomial_logistic(const RowMatrix& m,
                                       const std::vector<std::uint32_t>& rows,
                                       const std::vector<int>& y,
                                       const std::vector<std::uint32_t>& cols,
                                       double C, const TrainOptions& opt = {});

// Per-row class probabilities, one row per matrix row. Binary models emit
// [p(male), p(female)] with female the +1 class; multiclass emits softmax
// rows in age-group order. Throws DataError when the matrix width differs
// from the model's source width.
RowMatrix predict_proba(const LinearModel& model, const RowMatrix& m);

struct GridCell {
  double C = 0;
  int k = 0;  // as listed in the grid, before clamping to the column count
  double val_accuracy = 0;
};

struct GridSearchResult {
  GridCell best;
  std::vector<GridCell> cells;  // one per grid point
  TrainResult best_run;
};

// Exhaustive grid over C x k: select features and fit on the training rows,
// score accuracy on the validation rows. Ties prefer smaller k, then
// smaller C. k values larger than the column count act as "all columns".
GridSearchResult grid_search(const RowMatrix& m, const std::vector<int>& y,
                             Algorithm algo, const std::vector<double>& Cs,
                             const std::vector<int>& ks,
                             const std::vector<std::uint32_t>& train_rows,
                             const std::vector<std::uint32_t>& val_rows,
                             const TrainOptions& opt = {});

}  // namespace demograph
