/*
   Copyright 2026 The misolink Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef MISO_MISO_HPP
#define MISO_MISO_HPP

#include "miso/analytic.hpp"
#include "miso/common.hpp"
#include "miso/csir.hpp"
#include "miso/mc.hpp"
#include "miso/model.hpp"
#include "miso/ospa.hpp"
#include "miso/policy_io.hpp"
#include "miso/specfun.hpp"
#include "miso/sweep.hpp"
#include "miso/tpc.hpp"

#endif  // MISO_MISO_HPP
