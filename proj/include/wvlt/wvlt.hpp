#pragma once

#include <wvlt/bit_perm.hpp>
#include <wvlt/bit_vector.hpp>
#include <wvlt/construct.hpp>
#include <wvlt/index_format.hpp>
#include <wvlt/level_stats.hpp>
#include <wvlt/rank_select.hpp>
#include <wvlt/structures.hpp>
#include <wvlt/wt2wm.hpp>
#include <wvlt/ingest.hpp>
#include <wvlt/oracle.hpp>
#include <wvlt/parallel.hpp>
