#pragma once

#include "turntable/error.hpp"
#include "turntable/histogram.hpp"
#include "turntable/json_util.hpp"
#include "turntable/rng.hpp"
#include "turntable/parsers/document_json.hpp"
#include "turntable/parsers/parse.hpp"
#include "turntable/unified/normalize.hpp"
#include "turntable/unified/table_io.hpp"
#include "turntable/unified/tokenize.hpp"
#include "turntable/unified/transliterate.hpp"
#include "turntable/unified/unify.hpp"
#include "turntable/qc/report.hpp"
#include "turntable/qc/report_json.hpp"
#include "turntable/qc/report_svg.hpp"
#include "turntable/mining/contexts.hpp"
#include "turntable/mining/mining_json.hpp"
#include "turntable/compare/compare.hpp"
