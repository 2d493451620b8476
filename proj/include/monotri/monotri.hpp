#ifndef MONOTRI_MONOTRI_HPP_
#define MONOTRI_MONOTRI_HPP_

#include "monotri/intarith.hpp"
#include "monotri/fqpoly.hpp"
#include "monotri/zpoly.hpp"
#include "monotri/newton.hpp"
#include "monotri/ore.hpp"
#include "monotri/monogenity.hpp"
#include "monotri/report.hpp"
#include "monotri/scan.hpp"

#endif /* MONOTRI_MONOTRI_HPP_ */
