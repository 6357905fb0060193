#pragma once

#include "sepkit/closed_forms.hpp"
#include "sepkit/config.hpp"
#include "sepkit/dimension.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/hull.hpp"
#include "sepkit/io.hpp"
#include "sepkit/oracle.hpp"
#include "sepkit/ppt.hpp"
#include "sepkit/random.hpp"
#include "sepkit/tensor.hpp"
#include "sepkit/types.hpp"
#include "sepkit/unitary_basis.hpp"
#include "sepkit/witness.hpp"
