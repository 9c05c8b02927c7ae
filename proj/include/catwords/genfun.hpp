#pragma once

// Generating functions for the Catalan-word statistics, built from their
// closed and Chebyshev-sum forms, plus a harness that checks every identity
// coefficient by coefficient against independent computations.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "catwords/series.hpp"

namespace catwords {

// A truncated infinite sum changed when one more term was added.
class stability_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// x v / (1 - x v C(x)); [x^n v^m] = a(n,m).
multi_series gf_A(int order);

/// x^m C(x)^(m-1); [x^n] = a(n,m).
multi_series gf_A_m(int m, int order);

/// Ones statistic: x(1 - x + x^2 v + x v (x-2) C + x^2 v^2 C^2) divided by
/// (1-x)(1 - x v C)(1 - x - x v C).
multi_series gf_B(int order);

/// x / (1 - x^2 C(x)^2): words with an odd number of zeros.
multi_series gf_fine(int order);

/// A(x,v) from the Chebyshev sum over j = 1..jmax. Throws stability_error if
/// term jmax+1 still contributes below the x-cap.
multi_series gf_A_via_lemma(int order, int jmax);

/// (v / C) * sum_{j=1}^{terms} y / ((U_{j-1} - v y U_{j-2})(U_j - v y U_{j-1})).
multi_series lemma_partial_sum(int order, int terms);

/// Four-variable series with [x^n w^t v^s q^i] = a_i(n,s,t), s >= 1.
/// The w and v caps equal `order`; the q cap is `qmax`.
multi_series gf_A4(int order, int qmax, int jmax);

/// [x^n w^t q^i] = a_i(n,0,t), i >= 1, q capped at `qmax`.
multi_series gf_A0(int order, int qmax, int jmax);

// Independent reference series built from the counting recurrences.
multi_series zeros_series_from_recurrence(int order);
multi_series ones_series_from_recurrence(int order);
multi_series letter_series_from_recurrence(int order, int qmax);
multi_series letter_free_series_from_recurrence(int order, int qmax);

struct verify_params {
    int order = 20;
    int qmax = 8;
    std::optional<int> jmax; // defaults to order + 2

    int effective_jmax() const { return jmax ? *jmax : order + 2; }
};

struct verification_report {
    std::string identity;
    verify_params params;
    bool passed = true;
    std::optional<coefficient_mismatch> mismatch;
    std::string detail; // which comparison failed, or the error raised
    double millis = 0;
};

nlohmann::json to_json(const verification_report& report);

// Identity names accepted by run_identity, in report order.
const std::vector<std::string>& identity_names();

/// Runs one named identity check. When `inject_fault` names this identity,
/// one coefficient of its left-hand side is perturbed before comparison.
verification_report run_identity(const std::string& name, const verify_params& params,
                                 const std::optional<std::string>& inject_fault = std::nullopt);

/// All identities; independent checks run concurrently, reports come back in
/// identity_names() order.
std::vector<verification_report> verify_all(const verify_params& params,
                                            const std::optional<std::string>& inject_fault = std::nullopt);

/// Residual of A - xv/(1-xv)(1 - xC) - xv/(1-xv) A(x, 1/(1-xv)) with a
/// caller-supplied A.
verification_report check_functional_eq(const multi_series& a, int order);
verification_report check_functional_eq(int order);

verification_report check_co1(int order, int jmax);
verification_report check_co2(int order, int jmax);

/// l_family(j) against l_closed(j) for -1 <= j <= jmax, seeds v and w.
verification_report check_l_family(int order, int jmax);

} // namespace catwords
