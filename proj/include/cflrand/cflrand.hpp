#ifndef CFLRAND_CFLRAND_HPP
#define CFLRAND_CFLRAND_HPP

#include "cflrand/advised.hpp"
#include "cflrand/automaton_io.hpp"
#include "cflrand/census.hpp"
#include "cflrand/dfa.hpp"
#include "cflrand/errors.hpp"
#include "cflrand/languages.hpp"
#include "cflrand/numeric.hpp"
#include "cflrand/parallel.hpp"
#include "cflrand/pda.hpp"
#include "cflrand/prg.hpp"
#include "cflrand/probe.hpp"
#include "cflrand/randomness.hpp"
#include "cflrand/report.hpp"
#include "cflrand/word.hpp"

#endif  // CFLRAND_CFLRAND_HPP
