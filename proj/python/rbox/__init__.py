"""Box counting, peeling and extraction on r-ary 0-1 relations."""

from ._core import (
    BudgetExceeded,
    EmptySearchSpace,
    Error,
    InvalidArgument,
    ParseError,
    Relation,
    content_digest,
    count_boxes,
    extract_box,
    extract_multipartite,
    feasibility_frontier,
    generate_relation,
    naive_count_boxes,
    peel,
    support_sum,
    verify,
)

__all__ = [
    "BudgetExceeded",
    "EmptySearchSpace",
    "Error",
    "InvalidArgument",
    "ParseError",
    "Relation",
    "content_digest",
    "count_boxes",
    "extract_box",
    "extract_multipartite",
    "feasibility_frontier",
    "generate_relation",
    "naive_count_boxes",
    "peel",
    "support_sum",
    "verify",
]
