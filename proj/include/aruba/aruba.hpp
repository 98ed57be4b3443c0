/*
 * Copyright 2026 The Aruba Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "aruba/analyze.hpp"
#include "aruba/cluster.hpp"
#include "aruba/dataset.hpp"
#include "aruba/error.hpp"
#include "aruba/geometry.hpp"
#include "aruba/histogram.hpp"
#include "aruba/ingest/canonical.hpp"
#include "aruba/ingest/coco.hpp"
#include "aruba/ingest/dota.hpp"
#include "aruba/ingest/visdrone.hpp"
#include "aruba/io/annotation_writers.hpp"
#include "aruba/io/float_format.hpp"
#include "aruba/io/json_writer.hpp"
#include "aruba/io/reports.hpp"
#include "aruba/io/weight_file.hpp"
#include "aruba/kernel.hpp"
#include "aruba/pipeline.hpp"
#include "aruba/split.hpp"
#include "aruba/synthetic.hpp"
#include "aruba/toy.hpp"
#include "aruba/version.hpp"
#include "aruba/weights.hpp"
