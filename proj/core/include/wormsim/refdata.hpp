#pragma once

namespace wormsim::refdata {

// Published reference values for the prototype vehicle. These are embedded
// for side-by-side annotation in scenario summaries; nothing in the toolkit
// recomputes them.

// vehicle mass properties and geometry
inline constexpr double kMassKg = 5.542;
inline constexpr double kInertiaXKgM2 = 0.007239;
inline constexpr double kInertiaYKgM2 = 0.684939;
inline constexpr double kInertiaZKgM2 = 0.685918;
inline constexpr double kBodyLengthM = 1.340;
inline constexpr double kBodyDiameterM = 0.105;
inline constexpr double kPropellerAxisSpanM = 0.145;
inline constexpr double kSpringBeltLengthM = 0.080;

// derived defaults used throughout the toolkit
inline constexpr double kLateralArmM = kPropellerAxisSpanM / 2.0;  // 0.0725
inline constexpr double kVerticalArmDefaultM = 0.35;  // not published; unused
                                                      // by any steady result
inline constexpr double kFreshWaterDensity = 1000.0;  // kg/m^3

// reported model (ODE45-equivalent) steady states; these are the
// calibration targets
inline constexpr double kSurgeThrustN = 0.6;
inline constexpr double kSurgeSpeedModelMps = 0.374;
inline constexpr double kHeaveThrustN = 2.0;
inline constexpr double kHeaveSpeedModelMps = 0.234;
inline constexpr double kTurnThrustLeftN = 10.0;
inline constexpr double kTurnThrustRightN = -5.0;
inline constexpr double kTurnSpeedModelMps = 1.079;
inline constexpr double kTurnDiameterModelM = 1.733;

// CFD comparison values, annotation only (the reported 4.61 m/s forward
// speed is carried verbatim; it is widely off the model value and is never
// used as a target)
inline constexpr double kTurnDiameterCfdM = 1.756;
inline constexpr double kTurnSpeedCfdMps = 0.855;
inline constexpr double kSurgeSpeedCfdMps = 4.61;
inline constexpr double kHeaveSpeedCfdMps = 0.251;

// physical crawl experiment (horizontal flooded pipe)
inline constexpr double kPipeInnerDiameterM = 0.129;
inline constexpr double kCrawlMeasuredSpeedMps = 7.13e-3;
inline constexpr double kCrawlDisplacementM = 0.428;  // over ten cycles
inline constexpr int kCrawlCyclesMeasured = 10;
inline constexpr double kCrawlGaitPeriodS = 6.0;

// swim experiment annotations
inline constexpr double kCircleExperimentRadiusM = 2.980;

// gait model constants (six segments, one driving module)
inline constexpr int kGaitSegments = 6;
inline constexpr double kGaitStrokeM = 0.02773;  // 2.773 cm
inline constexpr double kGaitStepS = 1.0;
inline constexpr double kGaitActuationAngleDeg = 145.0;  // metadata only

}  // namespace wormsim::refdata
