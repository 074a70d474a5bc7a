"""Python access to the foliatk checks.

``run`` mirrors the command line: it returns the exit code and the parsed
JSON report.
"""

import json as _json

from ._foliatk import (  # noqa: F401
    Error,
    ParseError,
    PreconditionError,
    Polynomial,
    Scene,
    SceneError,
    VariableSet,
    __version__,
    command_names,
    groebner_basis,
    ideal_membership,
    load_scene,
    parse_scene,
    poisson_bracket,
    run_command,
)


def run(command, scene, **options):
    """Run a command on a Scene or a scene path; returns (exit_code, report dict)."""
    if not isinstance(scene, Scene):
        scene = load_scene(str(scene))
    code, text = run_command(command, scene, **options)
    return code, _json.loads(text)
