// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef MNTGEN_MNTGEN_HPP
#define MNTGEN_MNTGEN_HPP

#include "mntgen/arith.hpp"
#include "mntgen/families.hpp"
#include "mntgen/io.hpp"
#include "mntgen/pell.hpp"
#include "mntgen/poly.hpp"
#include "mntgen/report.hpp"
#include "mntgen/search.hpp"

#endif  // MNTGEN_MNTGEN_HPP
