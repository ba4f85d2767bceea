// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0
//
// JSON and CSV serialization. Units are explicit in every key: seconds,
// Hz, rad, T. Complex matrices are stored as {"re": [[..]], "im": [[..]]}.

#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "spinqudit/catcode.hpp"
#include "spinqudit/dynamics.hpp"
#include "spinqudit/tomography.hpp"

namespace spinqudit {

using json = nlohmann::json;

json matrix_to_json(const MatrixXc& m);
MatrixXc matrix_from_json(const json& j);
json vector_to_json(const VectorXc& v);
VectorXc vector_from_json(const json& j);

void to_json(json& j, const Axis& a);
void from_json(const json& j, Axis& a);
void to_json(json& j, const ExperimentDesign& d);
void from_json(const json& j, ExperimentDesign& d);
void to_json(json& j, const ShotRecord& r);
void from_json(const json& j, ShotRecord& r);
void to_json(json& j, const MleResult& r);
void to_json(json& j, const ValidationReport& r);
void to_json(json& j, const KlReport& r);
void to_json(json& j, const DriveTone& t);
void from_json(const json& j, DriveTone& t);
void to_json(json& j, const PulseSchedule& s);
void from_json(const json& j, PulseSchedule& s);

// axis_index,outcome,count
void write_counts_csv(std::ostream& os, const ShotRecord& r);
ShotRecord read_counts_csv(std::istream& is, int n_axes, int d);

}  // namespace spinqudit
