from ._baire import (
    ParseError,
    check,
    decode_entries,
    diamond,
    encode_machine,
    eval_name,
    evaluate,
    extract_blocks,
    inject_extract,
    instance,
    limsim,
    problems,
    quine_output,
    verify,
    witnesses,
)

__all__ = [
    "ParseError",
    "check",
    "decode_entries",
    "diamond",
    "encode_machine",
    "eval_name",
    "evaluate",
    "extract_blocks",
    "inject_extract",
    "instance",
    "limsim",
    "problems",
    "quine_output",
    "verify",
    "witnesses",
]
