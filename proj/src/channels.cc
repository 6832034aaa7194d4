#include "causal_channels/channels.h"

#include <cmath>
#include <string>

#include "causal_channels/errors.h"

namespace causal_channels {

CpMap::CpMap(std::size_t in_dim, std::size_t out_dim, std::vector<ComplexMatrix> kraus)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
    if (in_dim == 0 || out_dim == 0) {
        throw DimensionError("CP map dimensions must be >= 1");
    }
    for (const auto &k : kraus_) {
        if (static_cast<std::size_t>(k.rows()) != out_dim || static_cast<std::size_t>(k.cols()) != in_dim) {
            throw DimensionError(
                "Kraus operator is " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) + ", expected " +
                std::to_string(out_dim) + "x" + std::to_string(in_dim));
        }
        if (!all_finite(k)) {
            throw DimensionError("Kraus operator has non-finite entries");
        }
    }
}

CpMap CpMap::from_kraus(std::vector<ComplexMatrix> kraus) {
    if (kraus.empty()) {
        throw DimensionError("cannot infer dimensions from an empty Kraus list");
    }
    auto in = static_cast<std::size_t>(kraus.front().cols());
    auto out = static_cast<std::size_t>(kraus.front().rows());
    return CpMap(in, out, std::move(kraus));
}

CpMap CpMap::identity(std::size_t dim) {
    return CpMap(dim, dim, {causal_channels::identity(dim)});
}

CpMap CpMap::zero(std::size_t in_dim, std::size_t out_dim) {
    return CpMap(in_dim, out_dim, {});
}

ComplexMatrix CpMap::kraus_gram() const {
    ComplexMatrix g = ComplexMatrix::Zero(in_dim_, in_dim_);
    for (const auto &k : kraus_) {
        g.noalias() += k.adjoint() * k;
    }
    return g;
}

bool CpMap::is_zero(double tol) const {
    for (const auto &k : kraus_) {
        if (k.norm() > tol) {
            return false;
        }
    }
    return true;
}

bool CpMap::operator==(const CpMap &other) const {
    if (in_dim_ != other.in_dim_ || out_dim_ != other.out_dim_ || kraus_.size() != other.kraus_.size()) {
        return false;
    }
    for (std::size_t j = 0; j < kraus_.size(); j++) {
        if (kraus_[j] != other.kraus_[j]) {
            return false;
        }
    }
    return true;
}

ComplexMatrix apply_cp_map(const CpMap &map, const ComplexMatrix &rho) {
    if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != map.in_dim()) {
        throw DimensionError(
            "state of dimension " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
            " does not match map input dimension " + std::to_string(map.in_dim()));
    }
    ComplexMatrix out = ComplexMatrix::Zero(map.out_dim(), map.out_dim());
    for (const auto &k : map.kraus()) {
        out.noalias() += k * rho * k.adjoint();
    }
    return out;
}

ChoiOperator choi_of(const CpMap &map) {
    auto din = map.in_dim();
    auto dout = map.out_dim();
    ComplexMatrix m = ComplexMatrix::Zero(din * dout, din * dout);
    ComplexVector v(din * dout);
    for (const auto &k : map.kraus()) {
        // Column vector sum_k |k> (x) K|k>.
        for (std::size_t c = 0; c < din; c++) {
            for (std::size_t r = 0; r < dout; r++) {
                v(c * dout + r) = k(r, c);
            }
        }
        m.noalias() += v * v.adjoint();
    }
    return {din, dout, m};
}

ComplexMatrix apply_via_choi(const ChoiOperator &choi, const ComplexMatrix &rho) {
    auto din = choi.in_dim;
    auto dout = choi.out_dim;
    if (static_cast<std::size_t>(choi.matrix.rows()) != din * dout || choi.matrix.rows() != choi.matrix.cols()) {
        throw DimensionError("Choi matrix shape does not match its declared dimensions");
    }
    if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != din) {
        throw DimensionError("state dimension does not match Choi input dimension");
    }
    ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
    for (std::size_t a = 0; a < dout; a++) {
        for (std::size_t b = 0; b < dout; b++) {
            Complex acc = 0;
            for (std::size_t k = 0; k < din; k++) {
                for (std::size_t l = 0; l < din; l++) {
                    acc += choi.matrix(k * dout + a, l * dout + b) * rho(k, l);
                }
            }
            out(a, b) = acc;
        }
    }
    return out;
}

CpMap kraus_from_choi(const ChoiOperator &choi, double tol) {
    auto din = choi.in_dim;
    auto dout = choi.out_dim;
    if (static_cast<std::size_t>(choi.matrix.rows()) != din * dout || choi.matrix.rows() != choi.matrix.cols()) {
        throw DimensionError("Choi matrix shape does not match its declared dimensions");
    }
    auto eig = hermitian_eigen(choi.matrix, tol);
    double lambda_max = eig.values.size() ? eig.values.maxCoeff() : 0.0;
    if (eig.values.size() && eig.values.minCoeff() < -tol * std::max(1.0, lambda_max)) {
        throw PositivityError(
            "Choi operator has negative eigenvalue " + std::to_string(eig.values.minCoeff()) +
            "; the map is not completely positive");
    }
    double cutoff = 1e-10 * std::max(lambda_max, 1.0);
    std::vector<ComplexMatrix> kraus;
    for (Eigen::Index e = eig.values.size(); e-- > 0;) {
        double lambda = eig.values(e);
        if (lambda < cutoff) {
            continue;
        }
        double s = std::sqrt(lambda);
        ComplexMatrix k(dout, din);
        for (std::size_t c = 0; c < din; c++) {
            for (std::size_t r = 0; r < dout; r++) {
                k(r, c) = s * eig.vectors(c * dout + r, e);
            }
        }
        kraus.push_back(std::move(k));
    }
    return CpMap(din, dout, std::move(kraus));
}

double choi_distance(const CpMap &a, const CpMap &b) {
    if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
        throw DimensionError("Choi distance between maps of different shape");
    }
    return distance(choi_of(a).matrix, choi_of(b).matrix);
}

double tp_defect(const CpMap &map) {
    return (map.kraus_gram() - identity(map.in_dim())).norm();
}

bool is_trace_preserving(const CpMap &map, double tol) {
    return tp_defect(map) <= tol;
}

bool is_trace_nonincreasing(const CpMap &map, double tol) {
    return is_positive_semidefinite(identity(map.in_dim()) - map.kraus_gram(), tol);
}

CpMap complementary_map(const CpMap &map, double tol) {
    ComplexMatrix defect = identity(map.in_dim()) - map.kraus_gram();
    if (!is_positive_semidefinite(defect, tol)) {
        throw PreconditionError("complementary map requested for a map that is not trace-nonincreasing");
    }
    ComplexMatrix root = psd_sqrt(defect, tol);
    std::vector<ComplexMatrix> kraus;
    for (std::size_t m = 0; m < map.in_dim(); m++) {
        ComplexMatrix k = ComplexMatrix::Zero(map.out_dim(), map.in_dim());
        k.row(0) = root.row(m);
        if (k.norm() > 1e-15) {
            kraus.push_back(std::move(k));
        }
    }
    return CpMap(map.in_dim(), map.out_dim(), std::move(kraus));
}

CpMap add(const CpMap &a, const CpMap &b) {
    if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) {
        throw DimensionError("adding CP maps of different shape");
    }
    auto kraus = a.kraus();
    kraus.insert(kraus.end(), b.kraus().begin(), b.kraus().end());
    return CpMap(a.in_dim(), a.out_dim(), std::move(kraus));
}

CpMap scale(const CpMap &map, double c) {
    if (!(c >= 0) || !std::isfinite(c)) {
        throw PreconditionError("CP maps can only be scaled by finite nonnegative factors");
    }
    if (c == 0) {
        return CpMap::zero(map.in_dim(), map.out_dim());
    }
    double s = std::sqrt(c);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(map.kraus().size());
    for (const auto &k : map.kraus()) {
        kraus.push_back(s * k);
    }
    return CpMap(map.in_dim(), map.out_dim(), std::move(kraus));
}

CpMap compose(const CpMap &after, const CpMap &before) {
    if (after.in_dim() != before.out_dim()) {
        throw DimensionError(
            "composing a map with input dimension " + std::to_string(after.in_dim()) +
            " after a map with output dimension " + std::to_string(before.out_dim()));
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(after.kraus().size() * before.kraus().size());
    for (const auto &ka : after.kraus()) {
        for (const auto &kb : before.kraus()) {
            kraus.push_back(ka * kb);
        }
    }
    return CpMap(before.in_dim(), after.out_dim(), std::move(kraus));
}

CpMap tensor(const CpMap &a, const CpMap &b) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(a.kraus().size() * b.kraus().size());
    for (const auto &ka : a.kraus()) {
        for (const auto &kb : b.kraus()) {
            kraus.push_back(tensor_product(ka, kb));
        }
    }
    return CpMap(a.in_dim() * b.in_dim(), a.out_dim() * b.out_dim(), std::move(kraus));
}

CpMap trace_and_replace(std::size_t in_dim, const ComplexMatrix &state) {
    if (state.rows() != state.cols()) {
        throw DimensionError("replacement state must be square");
    }
    auto eig = hermitian_eigen(state);
    auto out_dim = static_cast<std::size_t>(state.rows());
    std::vector<ComplexMatrix> kraus;
    for (Eigen::Index e = 0; e < eig.values.size(); e++) {
        double lambda = eig.values(e);
        if (lambda < -kDefaultTol) {
            throw PositivityError("replacement state is not positive semidefinite");
        }
        if (lambda <= 1e-15) {
            continue;
        }
        for (std::size_t m = 0; m < in_dim; m++) {
            kraus.push_back(std::sqrt(lambda) * eig.vectors.col(e) * basis_ket(in_dim, m).adjoint());
        }
    }
    return CpMap(in_dim, out_dim, std::move(kraus));
}

CpMap canonicalize(const CpMap &map) {
    if (map.kraus().empty()) {
        return map;
    }
    return kraus_from_choi(choi_of(map));
}

Instrument::Instrument(std::size_t in_alphabet, std::size_t out_alphabet, std::size_t in_dim, std::size_t out_dim)
    : in_alphabet_(in_alphabet), out_alphabet_(out_alphabet), in_dim_(in_dim), out_dim_(out_dim) {
    if (in_alphabet == 0 || out_alphabet == 0) {
        throw DimensionError("instrument alphabets must be nonempty");
    }
    if (in_dim == 0 || out_dim == 0) {
        throw DimensionError("instrument dimensions must be >= 1");
    }
}

void Instrument::set(std::size_t input, std::size_t output, CpMap map) {
    if (input >= in_alphabet_ || output >= out_alphabet_) {
        throw DimensionError(
            "instrument element (" + std::to_string(output) + "|" + std::to_string(input) +
            ") outside alphabets " + std::to_string(out_alphabet_) + "|" + std::to_string(in_alphabet_));
    }
    if (map.in_dim() != in_dim_ || map.out_dim() != out_dim_) {
        throw DimensionError(
            "instrument element (" + std::to_string(output) + "|" + std::to_string(input) + ") maps " +
            std::to_string(map.in_dim()) + "->" + std::to_string(map.out_dim()) + ", expected " +
            std::to_string(in_dim_) + "->" + std::to_string(out_dim_));
    }
    if (map.kraus().empty()) {
        entries_.erase({input, output});
        return;
    }
    entries_.insert_or_assign({input, output}, std::move(map));
}

const CpMap *Instrument::find(std::size_t input, std::size_t output) const {
    auto it = entries_.find({input, output});
    return it == entries_.end() ? nullptr : &it->second;
}

CpMap Instrument::element(std::size_t input, std::size_t output) const {
    if (auto *m = find(input, output)) {
        return *m;
    }
    return CpMap::zero(in_dim_, out_dim_);
}

CpMap Instrument::total(std::size_t input) const {
    std::vector<ComplexMatrix> kraus;
    for (auto it = entries_.lower_bound({input, 0}); it != entries_.end() && it->first.first == input; ++it) {
        kraus.insert(kraus.end(), it->second.kraus().begin(), it->second.kraus().end());
    }
    return CpMap(in_dim_, out_dim_, std::move(kraus));
}

bool Instrument::operator==(const Instrument &other) const {
    return in_alphabet_ == other.in_alphabet_ && out_alphabet_ == other.out_alphabet_ && in_dim_ == other.in_dim_ &&
           out_dim_ == other.out_dim_ && entries_ == other.entries_;
}

InstrumentCheck check_instrument(const Instrument &inst, double tol) {
    InstrumentCheck check;
    for (std::size_t i = 0; i < inst.in_alphabet(); i++) {
        ComplexMatrix gram = ComplexMatrix::Zero(inst.in_dim(), inst.in_dim());
        for (auto it = inst.entries().lower_bound({i, 0}); it != inst.entries().end() && it->first.first == i; ++it) {
            gram += it->second.kraus_gram();
        }
        double defect = (gram - identity(inst.in_dim())).norm();
        check.defects.push_back(defect);
        if (defect > tol) {
            check.valid = false;
        }
    }
    return check;
}

bool validate_instrument(const Instrument &inst, double tol) {
    return check_instrument(inst, tol).valid;
}

CpMap random_cptp(std::size_t in_dim, std::size_t out_dim, std::size_t kraus_count, Rng &rng) {
    if (kraus_count == 0 || kraus_count * out_dim < in_dim) {
        throw PreconditionError("random CPTP map needs kraus_count * out_dim >= in_dim");
    }
    auto v = random_isometry(kraus_count * out_dim, in_dim, rng);
    std::vector<ComplexMatrix> kraus;
    for (std::size_t j = 0; j < kraus_count; j++) {
        kraus.push_back(v.block(j * out_dim, 0, out_dim, in_dim));
    }
    return CpMap(in_dim, out_dim, std::move(kraus));
}

CpMap random_cptp(std::size_t in_dim, std::size_t out_dim, std::size_t kraus_count, std::uint64_t seed) {
    Rng rng(seed);
    return random_cptp(in_dim, out_dim, kraus_count, rng);
}

Instrument random_instrument(
    std::size_t in_dim,
    std::size_t out_dim,
    std::size_t in_alphabet,
    std::size_t out_alphabet,
    std::size_t kraus_per_element,
    Rng &rng) {
    auto per_input = out_alphabet * kraus_per_element;
    if (kraus_per_element == 0 || per_input * out_dim < in_dim) {
        throw PreconditionError("random instrument needs out_alphabet * kraus_per_element * out_dim >= in_dim");
    }
    Instrument inst(in_alphabet, out_alphabet, in_dim, out_dim);
    for (std::size_t i = 0; i < in_alphabet; i++) {
        auto v = random_isometry(per_input * out_dim, in_dim, rng);
        for (std::size_t o = 0; o < out_alphabet; o++) {
            std::vector<ComplexMatrix> kraus;
            for (std::size_t j = 0; j < kraus_per_element; j++) {
                kraus.push_back(v.block((o * kraus_per_element + j) * out_dim, 0, out_dim, in_dim));
            }
            inst.set(i, o, CpMap(in_dim, out_dim, std::move(kraus)));
        }
    }
    return inst;
}

Instrument random_instrument(
    std::size_t in_dim,
    std::size_t out_dim,
    std::size_t in_alphabet,
    std::size_t out_alphabet,
    std::size_t kraus_per_element,
    std::uint64_t seed) {
    Rng rng(seed);
    return random_instrument(in_dim, out_dim, in_alphabet, out_alphabet, kraus_per_element, rng);
}

}  // namespace causal_channels
