// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

int main(int argc, char** argv) { return spinqudit::cli::run_cli(argc, argv); }
