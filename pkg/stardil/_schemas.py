from argschema import ArgSchema
from argschema.fields import InputFile, OutputFile, OutputDir, Integer, Boolean, String, Float, List

PROFILES = ("fast", "safe")


class CommandParameters(ArgSchema):
    record_time = Boolean(description="report wall time in the output", default=True)
    log_dir = OutputDir(description="directory receiving log.txt", required=False)


class InstanceParameters(CommandParameters):
    input_file = InputFile(description="point file, one point per line", required=True)
    profile = String(description="candidate pair constants profile", default="fast",
                     validate=lambda x: x in PROFILES)


class EvalParameters(InstanceParameters):
    center = String(description="star center as x,y[,z]", required=True)
    method = String(description="fast or brute", default="fast",
                    validate=lambda x: x in ("fast", "brute"))


class CenterParameters(InstanceParameters):
    method = String(description="chan or bisect", default="chan",
                    validate=lambda x: x in ("chan", "bisect"))
    eps = Float(description="relative tolerance on the optimal dilation", required=False,
                validate=lambda x: x > 0)
    seed = Integer(description="random seed (default DILATION_SEED)", required=False, allow_none=True)


class VertexParameters(InstanceParameters):
    method = String(description="fast or brute", default="fast",
                    validate=lambda x: x in ("fast", "brute"))
    seed = Integer(description="random seed (default DILATION_SEED)", required=False, allow_none=True)


class GenParameters(CommandParameters):
    kind = String(description="uniform, clustered, collinear or annular", default="uniform",
                  validate=lambda x: x in ("uniform", "clustered", "collinear", "annular"))
    n = Integer(description="number of points", required=True, validate=lambda x: x >= 1)
    d = Integer(description="dimension", default=2, validate=lambda x: x >= 2)
    seed = Integer(description="random seed (default DILATION_SEED)", required=False, allow_none=True)
    output_file = OutputFile(description="point file to write", required=True)


class RenderParameters(InstanceParameters):
    center = String(description="star center as x,y", required=True)
    svg = OutputFile(description="SVG file to write", required=True)
    region = Float(description="overlay the region of centers with dilation below this level",
                   required=False, allow_none=True, validate=lambda x: x > 1)


class BenchParameters(CommandParameters):
    suite = String(description="eval, eval_brute, center or vertex", default="eval",
                   validate=lambda x: x in ("eval", "eval_brute", "center", "vertex"))
    sizes = List(Integer, description="instance sizes", cli_as_single_argument=True,
                 default=[1024, 2048, 4096])
    seeds = Integer(description="instances per size", default=3, validate=lambda x: x >= 1)
    kind = String(description="instance kind", default="uniform")
    d = Integer(description="dimension", default=2, validate=lambda x: x >= 2)
    profile = String(description="candidate pair constants profile", default="fast",
                     validate=lambda x: x in PROFILES)
