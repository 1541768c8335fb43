#pragma once

#include "bitset.hpp"
#include "cnf.hpp"
#include "config.hpp"
#include "error.hpp"
#include "field.hpp"
#include "graph.hpp"
#include "homomorphism.hpp"
#include "io.hpp"
#include "kernel.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "reductions.hpp"
#include "representation.hpp"
#include "rng.hpp"
#include "witness.hpp"
