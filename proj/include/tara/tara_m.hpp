#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace tara {

// Betting strategies for the martingale wealth process
// M_t = prod_i (1 + beta_i (p_i - 1/2)).
//
//   sign_history  beta_t = lambda * sign(mean(p_1..p_{t-1}) - 1/2); the first
//                 bet is +lambda and an exact tie bets 0. Predictable.
//   mixture       average of four wealth processes with constant bets
//                 {+-lambda, +-lambda/2}. Predictable.
//   paper_kelly_unsafe  beta_t = lambda * sign(p_t - 1/2) uses the CURRENT
//                 p-value: every factor is >= 1, E[M_t] grows under the null
//                 and Ville's inequality does NOT apply. Kept only for
//                 reproducing trajectories of that rule; never use its
//                 crossings as evidence.
enum class BettingStrategy { sign_history, mixture, paper_kelly_unsafe };

const char* to_string(BettingStrategy s);
BettingStrategy strategy_from_string(std::string_view name);

// Wealth process state. Wealth is accumulated in log space; `wealth()`
// saturates instead of overflowing on long winning streaks.
class Martingale {
public:
    explicit Martingale(double lambda, BettingStrategy strategy = BettingStrategy::sign_history);

    // The predictable bet for the upcoming step. For the mixture this is the
    // wealth-weighted average of the component bets (the exact one-step
    // equivalent bet of the portfolio). Undefined (0) for paper_kelly_unsafe,
    // whose bet needs the incoming p.
    double next_bet() const;

    // Consume one conformal p-value in (0, 1].
    void update(double p);

    // Supermartingale check hook: advance with an explicit predictable bet,
    // |beta| <= 2 * lambda. Only meaningful for single-process strategies.
    void update_with_bet(double p, double beta);

    std::int64_t t() const { return t_; }
    double log_wealth() const;
    double wealth() const;  // exp(log_wealth), saturating
    double last_bet() const { return last_bet_; }
    double lambda() const { return lambda_; }
    BettingStrategy strategy() const { return strategy_; }

private:
    double history_mean() const;

    BettingStrategy strategy_;
    double lambda_;
    std::int64_t t_ = 0;
    double sum_p_ = 0.0;       // running statistic behind the predictable bet
    double log_wealth_ = 0.0;  // single-process strategies
    std::array<double, 4> mix_log_{};  // mixture component log-wealths
    double last_bet_ = 0.0;
};

struct StreamStep {
    std::int64_t t = 0;
    double p = 0.0;
    double beta = 0.0;
    double log_wealth = 0.0;
};

struct StreamReport {
    bool detected = false;
    std::int64_t stop_time = -1;  // first t with wealth >= 1/alpha, or -1
    double final_log_wealth = 0.0;
    double log_threshold = 0.0;   // log(1/alpha)
    double alpha = 0.0;
    double lambda = 0.0;
    BettingStrategy strategy = BettingStrategy::sign_history;
    std::vector<StreamStep> trajectory;  // empty unless requested
};

// Run the wealth process over a p-value stream, stopping at the Ville
// threshold 1/alpha. Under the null, P(exists t: M_t >= 1/alpha) <= alpha.
StreamReport detect_stream(std::span<const double> pvalues, double alpha, double lambda,
                           BettingStrategy strategy = BettingStrategy::sign_history,
                           bool record_trajectory = false);

}  // namespace tara
