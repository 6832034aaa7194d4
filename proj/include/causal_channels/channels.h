#ifndef CAUSAL_CHANNELS_CHANNELS_H
#define CAUSAL_CHANNELS_CHANNELS_H

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "causal_channels/numerics.h"

namespace causal_channels {

/// A completely positive map in Kraus form, rho -> sum_j K_j rho K_j^dagger.
///
/// An empty Kraus list is the zero map. Every Kraus operator has shape
/// out_dim x in_dim.
class CpMap {
   public:
    CpMap(std::size_t in_dim, std::size_t out_dim, std::vector<ComplexMatrix> kraus = {});

    /// Infers the dimensions from the first operator; `kraus` must be nonempty.
    static CpMap from_kraus(std::vector<ComplexMatrix> kraus);
    static CpMap identity(std::size_t dim);
    static CpMap zero(std::size_t in_dim, std::size_t out_dim);

    std::size_t in_dim() const {
        return in_dim_;
    }
    std::size_t out_dim() const {
        return out_dim_;
    }
    const std::vector<ComplexMatrix> &kraus() const {
        return kraus_;
    }

    /// sum_j K_j^dagger K_j (in_dim x in_dim).
    ComplexMatrix kraus_gram() const;

    /// True when every Kraus operator has Frobenius norm <= tol.
    bool is_zero(double tol = 0.0) const;

    bool operator==(const CpMap &other) const;

   private:
    std::size_t in_dim_;
    std::size_t out_dim_;
    std::vector<ComplexMatrix> kraus_;
};

/// Choi-Jamiolkowski operator sum_{k,l} |k><l| (x) map(|k><l|), ordering (in, out).
struct ChoiOperator {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    ComplexMatrix matrix;
};

ComplexMatrix apply_cp_map(const CpMap &map, const ComplexMatrix &rho);

ChoiOperator choi_of(const CpMap &map);

/// tr_in[ M (rho^T (x) 1_out) ], evaluated directly from the Choi matrix.
ComplexMatrix apply_via_choi(const ChoiOperator &choi, const ComplexMatrix &rho);

/// Kraus operators from the eigendecomposition of a PSD Choi operator.
/// Eigenvalues below 1e-10 * max(lambda_max, 1) are discarded.
/// Throws PositivityError when the Choi matrix has an eigenvalue below -tol.
CpMap kraus_from_choi(const ChoiOperator &choi, double tol = kDefaultTol);

/// Frobenius distance between the Choi operators of two maps with equal dims.
double choi_distance(const CpMap &a, const CpMap &b);

/// ||sum K^dagger K - 1||_F.
double tp_defect(const CpMap &map);

bool is_trace_preserving(const CpMap &map, double tol = kDefaultTol);
bool is_trace_nonincreasing(const CpMap &map, double tol = kDefaultTol);

/// Returns a CP trace-nonincreasing map whose Kraus union with `map` is TP.
///
/// With D = 1 - sum K^dagger K, the completion is {|0><m| sqrt(D)}_m; Kraus
/// operators that vanish are dropped, so a TP input yields the zero map.
CpMap complementary_map(const CpMap &map, double tol = kDefaultTol);

/// Kraus union: the map a + b.
CpMap add(const CpMap &a, const CpMap &b);

/// c * map for c >= 0.
CpMap scale(const CpMap &map, double c);

/// after o before.
CpMap compose(const CpMap &after, const CpMap &before);

/// a (x) b acting on the joint system with subsystem order (a, b).
CpMap tensor(const CpMap &a, const CpMap &b);

/// rho -> tr(rho) * state.
CpMap trace_and_replace(std::size_t in_dim, const ComplexMatrix &state);

/// Re-derives a minimal Kraus set from the Choi operator.
CpMap canonicalize(const CpMap &map);

/// A classical-input-conditioned family of CP maps, element(i, o) = M_{o|i}.
///
/// Elements share in_dim/out_dim. Elements not stored explicitly are zero
/// maps, which keeps instruments with large aggregate alphabets cheap.
class Instrument {
   public:
    using Key = std::pair<std::size_t, std::size_t>;  // (input, output)

    Instrument(std::size_t in_alphabet, std::size_t out_alphabet, std::size_t in_dim, std::size_t out_dim);

    std::size_t in_alphabet() const {
        return in_alphabet_;
    }
    std::size_t out_alphabet() const {
        return out_alphabet_;
    }
    std::size_t in_dim() const {
        return in_dim_;
    }
    std::size_t out_dim() const {
        return out_dim_;
    }

    /// Stores M_{o|i}. Throws DimensionError on shape or alphabet mismatch.
    void set(std::size_t input, std::size_t output, CpMap map);

    /// Returns nullptr when M_{o|i} is the zero map.
    const CpMap *find(std::size_t input, std::size_t output) const;
    CpMap element(std::size_t input, std::size_t output) const;

    /// sum_o M_{o|i}.
    CpMap total(std::size_t input) const;

    const std::map<Key, CpMap> &entries() const {
        return entries_;
    }

    bool operator==(const Instrument &other) const;

   private:
    std::size_t in_alphabet_;
    std::size_t out_alphabet_;
    std::size_t in_dim_;
    std::size_t out_dim_;
    std::map<Key, CpMap> entries_;
};

struct InstrumentCheck {
    bool valid = true;
    /// ||sum_o K^dagger K - 1||_F per classical input.
    std::vector<double> defects;
};

InstrumentCheck check_instrument(const Instrument &inst, double tol = kDefaultTol);

/// True iff for every classical input the output-summed map is TP within tol.
bool validate_instrument(const Instrument &inst, double tol = kDefaultTol);

/// Random CPTP map; kraus_count * out_dim must be >= in_dim.
CpMap random_cptp(std::size_t in_dim, std::size_t out_dim, std::size_t kraus_count, Rng &rng);
CpMap random_cptp(std::size_t in_dim, std::size_t out_dim, std::size_t kraus_count, std::uint64_t seed);

/// Random instrument; out_alphabet * kraus_per_element * out_dim must be >= in_dim.
Instrument random_instrument(
    std::size_t in_dim,
    std::size_t out_dim,
    std::size_t in_alphabet,
    std::size_t out_alphabet,
    std::size_t kraus_per_element,
    Rng &rng);
Instrument random_instrument(
    std::size_t in_dim,
    std::size_t out_dim,
    std::size_t in_alphabet,
    std::size_t out_alphabet,
    std::size_t kraus_per_element,
    std::uint64_t seed);

}  // namespace causal_channels

#endif
