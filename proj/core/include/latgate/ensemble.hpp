#pragma once

#include "latgate/gate.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace latgate {

struct SiteOccupancy {
    bool plus = false;   ///< sigma+ (target) well occupied
    bool minus = false;  ///< sigma- (control) well occupied

    bool paired() const { return plus && minus; }
    bool occupied() const { return plus || minus; }
};

struct LatticeFill {
    std::vector<SiteOccupancy> sites;
    double fill_probability = 0.0;
    std::uint64_t seed = 0;

    std::size_t n_sites() const { return sites.size(); }
    std::size_t paired_sites() const;
    std::size_t unpaired_sites() const;
    std::size_t atoms() const;
};

/// Independent Bernoulli(p) occupancy for each well. Throws std::invalid_argument unless p is in [0, 1].
LatticeFill simulate_fill(std::size_t n_sites, double p, std::uint64_t seed);

/// Same lattice with every doubly occupied site emptied.
LatticeFill remove_pairs(const LatticeFill& fill);

enum class StageKind { paired_and_unpaired, unpaired_only, double_gate_with_flush };

std::string stage_name(StageKind kind);

/// Counts are per occupied site ("unit"). A paired unit is read out as a two-qubit
/// label; a lone atom carries the prepared label through the single-qubit pipeline.
struct MeasurementStage {
    StageKind stage = StageKind::paired_and_unpaired;
    int input = 0;
    std::array<std::uint64_t, kBasisSize> counts{};
    std::uint64_t leaked = 0;   ///< pairs lost to scattering
    std::uint64_t flushed = 0;  ///< units removed by the flush
    std::uint64_t units = 0;    ///< occupied sites entering the stage
    std::uint64_t atoms = 0;

    std::uint64_t detected() const;
};

/// Samples one stage. unpaired_only requires a fill without pairs; every
/// stage rejects an out-of-range input. The RNG stream is derived from
/// (seed, stage) so stages are independent and reproducible.
MeasurementStage run_stage(const LatticeFill& fill, const TruthTable& table, int input, StageKind stage,
                           std::uint64_t seed);

struct CorrectedRow {
    int input = 0;
    std::array<double, kBasisSize> probability{};
    std::array<double, kBasisSize> std_error{};
    double leak = 0.0;
    double pair_survival = 0.0;
    double apparent_fidelity = 0.0;  ///< raw fraction of units found in the C-NOT image
    double corrected_fidelity = 0.0;
    std::uint64_t pairs = 0;
};

/// Removes the lone-atom contribution measured by the unpaired_only stage.
/// Throws NonIdentifiable when the stages imply no pairs, and
/// std::invalid_argument when the stages disagree on input or kind.
CorrectedRow background_subtract(const MeasurementStage& mixed, const MeasurementStage& unpaired,
                                 const MeasurementStage& double_gate);

/// CSV columns: stage,input,p00,p01,p10,p11,leaked,n (fractions of n = units).
void write_stage_csv(std::ostream& os, const std::vector<MeasurementStage>& stages);

}  // namespace latgate
