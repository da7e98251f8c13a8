#pragma once

#include "nullpart/certificate.hpp"
#include "nullpart/errors.hpp"
#include "nullpart/exact_algebra.hpp"
#include "nullpart/exact_matrix.hpp"
#include "nullpart/partition_matrix.hpp"
#include "nullpart/subsets.hpp"
#include "nullpart/weights.hpp"
