#pragma once

#include "dbx/breadth.hpp"
#include "dbx/classify.hpp"
#include "dbx/frames.hpp"
#include "dbx/scenario.hpp"
#include "dbx/verify.hpp"

namespace dbx {

struct PipelineOptions {
    bool force = false; // run the case even if classification disagrees
    FrequencyMode frequency = FrequencyMode::Consistent;
    double tolerance = 1e-6; // classification and frame-identity tolerance
};

/// Samples the scenario's geometry (catalog surface + curve, or the abstract
/// curvature route) into a frame field.
FrameField build_frame_field(const Scenario& sc);

/// Builds the coefficient trajectory selected by case.form over the field's
/// theta range. The form must match the classification flags unless
/// opt.force; a mismatch raises Error(CaseInapplicable).
CoefficientTrajectory build_trajectory(const Scenario& sc,
                                       const FrameField& field,
                                       const CurveClass& cls,
                                       const PipelineOptions& opt);

// Negative-control injections selected by the scenario's case.corrupt key.
// corrupt_field handles "frame_g"; corrupt_trajectory handles the m/f keys.
void corrupt_field(const std::string& kind, FrameField& field);
void corrupt_trajectory(const std::string& kind, CoefficientTrajectory& traj);

struct PipelineResult {
    FrameField field;
    CurveClass classification;
    CoefficientTrajectory trajectory;
    BreadthPair pair;
    VerificationReport report;
};

/// frame field -> classification gate -> trajectory -> partner curve ->
/// verification battery, with corruptions applied before verification.
PipelineResult run_breadth_pipeline(const Scenario& sc,
                                    const PipelineOptions& opt);

} // namespace dbx
