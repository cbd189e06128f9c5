#pragma once

#include <vector>

#include "cmoead/core.hpp"

namespace cmoead {

/// Mean distance from each reference point to its nearest approximation
/// point. Returns +inf for an empty approximation; throws
/// std::invalid_argument on an empty reference or mismatched dimensions.
double igd(const std::vector<Vector>& reference, const std::vector<Vector>& approximation);

/// Exact dominated hypervolume bounded by `reference_point`, for two or three
/// objectives. Points not strictly better than the reference point in every
/// coordinate contribute nothing. Throws std::domain_error for m > 3.
double hypervolume(const std::vector<Vector>& points, const Vector& reference_point);

/// HV reference point for a known front: 1.2 times the front's nadir point.
/// A nonpositive nadir component falls back to nadir + 0.2 * spread, with a
/// zero spread padded to 1e-6, so the point always lies strictly beyond the
/// nadir.
Vector reference_point(const std::vector<Vector>& front);

/// Fixed HV reference point used for the gripper problem.
Vector gripper_reference_point();

}  // namespace cmoead
