#pragma once

#include "narayana/bounds.hpp"
#include "narayana/error.hpp"
#include "narayana/highprec.hpp"
#include "narayana/real_enclosure.hpp"
#include "narayana/reduction.hpp"
#include "narayana/repdigit.hpp"
#include "narayana/report.hpp"
#include "narayana/search.hpp"
#include "narayana/sequence.hpp"
