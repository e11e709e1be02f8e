// Copyright 2026 The liniso Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "liniso/bitcode.hpp"
#include "liniso/corpus.hpp"
#include "liniso/f2.hpp"
#include "liniso/fourier.hpp"
#include "liniso/generators.hpp"
#include "liniso/io.hpp"
#include "liniso/protocol.hpp"
#include "liniso/query_tester.hpp"
#include "liniso/sampler.hpp"
#include "liniso/simplex.hpp"
#include "liniso/spectral_lp.hpp"
