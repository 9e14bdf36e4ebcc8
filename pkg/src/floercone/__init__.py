"""Knot Floer mapping cones for integer surgery and contact-surgery certificates."""

from .bifilt import BifiltComplex, BifiltGenerator, GradedDims, gf2_homology, is_reduced, reduce
from .cone import (
    ConeParams,
    MappingCone,
    Verdict,
    build_cone,
    check_top_injectivity,
    hf_hat_surgery,
    hfk_dual,
    top_alexander,
)
from .contact import (
    LegendrianData,
    SurgeryPlan,
    TightnessCertificate,
    certify_tight,
    dgs_negative,
    dgs_plan,
    dgs_positive,
    evaluate_cf,
    loss_alexander,
    neg_cf,
    pushoff_after_surgery,
    slam_dunk,
    smooth_roundtrip,
    spinc_label,
    stabilize,
)
from .errors import DepthError, FloerconeError, ParseError, PreconditionError, SliceError
from .knot import KnotComplex, parse_knot_complex, validate
from .library import list_knots, load
from .rational import Rat, fmt_rat, parse_rat

__version__ = "0.1.0"
