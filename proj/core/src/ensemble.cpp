#include "latgate/ensemble.hpp"

#include "latgate/errors.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

namespace latgate {

namespace {

// Uniform [0, 1) from the top 53 bits; identical on every platform,
// unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr int kLeakedOutcome = kBasisSize;

int sample_row(const TruthTable& table, int input, std::mt19937_64& rng) {
    const double u = uniform01(rng);
    double acc = 0.0;
    for (int o = 0; o < kBasisSize; ++o) {
        acc += table.populations[static_cast<std::size_t>(input)][static_cast<std::size_t>(o)];
        if (u < acc) return o;
    }
    return kLeakedOutcome;
}

void check_input(int input) {
    if (input < 0 || input >= kBasisSize) throw std::invalid_argument("ensemble: input basis index out of range");
}

}  // namespace

std::size_t LatticeFill::paired_sites() const {
    std::size_t n = 0;
    for (const auto& s : sites) n += s.paired();
    return n;
}

std::size_t LatticeFill::unpaired_sites() const {
    std::size_t n = 0;
    for (const auto& s : sites) n += s.occupied() && !s.paired();
    return n;
}

std::size_t LatticeFill::atoms() const {
    std::size_t n = 0;
    for (const auto& s : sites) n += static_cast<std::size_t>(s.plus) + static_cast<std::size_t>(s.minus);
    return n;
}

LatticeFill simulate_fill(std::size_t n_sites, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("simulate_fill: fill probability must lie in [0, 1]");
    LatticeFill fill;
    fill.fill_probability = p;
    fill.seed = seed;
    fill.sites.resize(n_sites);
    std::mt19937_64 rng(seed);
    for (auto& s : fill.sites) {
        s.plus = uniform01(rng) < p;
        s.minus = uniform01(rng) < p;
    }
    return fill;
}

LatticeFill remove_pairs(const LatticeFill& fill) {
    LatticeFill out = fill;
    for (auto& s : out.sites) {
        if (s.paired()) s = SiteOccupancy{};
    }
    return out;
}

std::string stage_name(StageKind kind) {
    switch (kind) {
        case StageKind::paired_and_unpaired: return "paired_and_unpaired";
        case StageKind::unpaired_only: return "unpaired_only";
        case StageKind::double_gate_with_flush: return "double_gate_with_flush";
    }
    throw std::invalid_argument("unknown stage");
}

std::uint64_t MeasurementStage::detected() const {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

MeasurementStage run_stage(const LatticeFill& fill, const TruthTable& table, int input, StageKind stage,
                           std::uint64_t seed) {
    check_input(input);
    if (stage == StageKind::unpaired_only && fill.paired_sites() != 0) {
        throw std::invalid_argument("run_stage: unpaired_only stage needs a fill without pairs");
    }
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stage) + 1)));

    MeasurementStage m;
    m.stage = stage;
    m.input = input;
    const bool flush = stage == StageKind::double_gate_with_flush;
    for (const auto& site : fill.sites) {
        if (!site.occupied()) continue;
        ++m.units;
        m.atoms += static_cast<std::uint64_t>(site.plus) + static_cast<std::uint64_t>(site.minus);
        if (!site.paired()) {
            if (flush && target_bit(input) == 0) {
                ++m.flushed;
            } else {
                ++m.counts[static_cast<std::size_t>(input)];
            }
            continue;
        }
        int out = sample_row(table, input, rng);
        if (flush && out != kLeakedOutcome) {
            if (target_bit(out) == 0) {
                ++m.flushed;
                continue;
            }
            out = sample_row(table, out, rng);
        }
        if (out == kLeakedOutcome) {
            ++m.leaked;
        } else {
            ++m.counts[static_cast<std::size_t>(out)];
        }
    }
    return m;
}

CorrectedRow background_subtract(const MeasurementStage& mixed, const MeasurementStage& unpaired,
                                 const MeasurementStage& double_gate) {
    if (mixed.stage != StageKind::paired_and_unpaired || unpaired.stage != StageKind::unpaired_only ||
        double_gate.stage != StageKind::double_gate_with_flush) {
        throw std::invalid_argument("background_subtract: stages must be mixed, unpaired_only, double_gate_with_flush");
    }
    if (mixed.input != unpaired.input || mixed.input != double_gate.input) {
        throw std::invalid_argument("background_subtract: stages were prepared in different inputs");
    }
    if (unpaired.units > mixed.units) {
        throw NonIdentifiable("background_subtract: unpaired stage has more units than the mixed stage");
    }
    const std::uint64_t pairs = mixed.units - unpaired.units;
    if (pairs == 0) throw NonIdentifiable("background_subtract: no paired sites, gate row is not identifiable");

    CorrectedRow row;
    row.input = mixed.input;
    row.pairs = pairs;
    const double np = static_cast<double>(pairs);
    const double nu = static_cast<double>(unpaired.units);
    double total = 0.0;
    for (std::size_t y = 0; y < kBasisSize; ++y) {
        const double p = (static_cast<double>(mixed.counts[y]) - static_cast<double>(unpaired.counts[y])) / np;
        row.probability[y] = p;
        total += p;
        const double pc = std::clamp(p, 0.0, 1.0);
        double var = pc * (1.0 - pc) / np;
        if (nu > 0.0) {
            const double u = static_cast<double>(unpaired.counts[y]) / nu;
            var += u * (1.0 - u) * nu / (np * np);
        }
        row.std_error[y] = std::sqrt(var);
    }
    row.leak = 1.0 - total;

    std::uint64_t lone_survivors = 0;
    for (int y = 0; y < kBasisSize; ++y) {
        if (target_bit(y) == 1) lone_survivors += unpaired.counts[static_cast<std::size_t>(y)];
    }
    row.pair_survival = (static_cast<double>(double_gate.detected()) - static_cast<double>(lone_survivors)) / np;

    const auto ideal = static_cast<std::size_t>(cnot_image(mixed.input));
    row.apparent_fidelity = mixed.units > 0 ? static_cast<double>(mixed.counts[ideal]) / static_cast<double>(mixed.units) : 0.0;
    row.corrected_fidelity = row.probability[ideal];
    return row;
}

void write_stage_csv(std::ostream& os, const std::vector<MeasurementStage>& stages) {
    os << "stage,input,p00,p01,p10,p11,leaked,n\n";
    char buf[64];
    for (const auto& m : stages) {
        os << stage_name(m.stage) << ',' << basis_label(m.input);
        const double n = static_cast<double>(m.units);
        auto frac = [&](std::uint64_t c) { return m.units > 0 ? static_cast<double>(c) / n : 0.0; };
        for (auto c : m.counts) {
            std::snprintf(buf, sizeof buf, ",%.9g", frac(c));
            os << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.9g,%" PRIu64 "\n", frac(m.leaked), m.units);
        os << buf;
    }
}

}  // namespace latgate
