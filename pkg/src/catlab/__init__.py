"""Finite categories, asphericity, smooth functors and Kan extensions."""
from .core import *  # noqa: F401,F403
from .constructions import (  # noqa: F401
    FINAL, CartesianSquare, Coslice, Fiber, Grothendieck, LiftCategory, Slice, TwoSquare, add_final,
    c0_c1_c2, comma_square, coslice, fiber, grothendieck, induced_slice_functor, lift_category, pullback,
    slice, slice_category,
)
from .search import are_isomorphic, count_functors, enumerate_functors, find_isomorphism  # noqa: F401
from .adjunctions import (  # noqa: F401
    Adjunction, brute_force_right_adjoint, construct_right_adjoint, has_left_adjoint, has_right_adjoint,
    is_equivalence, verify_adjunction,
)
from .asphericity import (  # noqa: F401
    MINIMAL, NONEMPTY, AsphericityStructure, check_structure_axioms, is_aspheric, is_aspheric_functor,
    is_locally_aspheric,
)
from .fibrations import (  # noqa: F401
    SmoothVerdict, fiber_adjoint_equivalence, is_cartesian, is_cocartesian, is_cofibration, is_fibration,
    is_hypercartesian, is_hypercocartesian, is_precofibration, is_prefibration, is_smooth, is_smooth_minimal,
    is_weakly_smooth,
)
from .kan import (  # noqa: F401
    OverCategoryObject, epsilon_component, eta_component, kappa, shriek, theta, theta_prime, verify_cartint,
    verify_lemmeclef,
)
from .enumeration import enumerate_categories  # noqa: F401
