#ifndef EPI_EPI_HPP
#define EPI_EPI_HPP

#include "residue_field.hpp"
#include "symbolic.hpp"
#include "square_classes.hpp"
#include "strata.hpp"
#include "quad_forms.hpp"
#include "hecke.hpp"
#include "lift.hpp"
#include "packets.hpp"

#endif
