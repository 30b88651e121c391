from rest_framework import serializers

from common.exceptions import GeneratorSyntaxError
from experiments.choices import ExperimentKind, OutputFormat
from setcore.generators import parse_generator

SEED_MAX = 2**64 - 1


class GeneratorField(serializers.CharField):
    """A generator spec string, validated by parsing it."""

    def to_internal_value(self, data):
        text = super().to_internal_value(data)
        try:
            parse_generator(text)
        except GeneratorSyntaxError as exc:
            raise serializers.ValidationError(exc.message) from None
        return text


def _positive_list(child, **kwargs):
    return serializers.ListField(child=child, allow_empty=False, **kwargs)


class ExperimentConfigSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=ExperimentKind.choices)
    seed = serializers.IntegerField(min_value=0, max_value=SEED_MAX, default=0)
    constants = serializers.DictField(child=serializers.FloatField(), default=dict)
    out = serializers.CharField(required=False, allow_blank=True, default="")
    format = serializers.ChoiceField(choices=OutputFormat.choices, default=OutputFormat.JSONL)


class RepulsionConfigSerializer(ExperimentConfigSerializer):
    l_values = _positive_list(serializers.IntegerField(min_value=3))
    s_gens = _positive_list(GeneratorField())
    d_values = _positive_list(serializers.IntegerField(), default=[1])
    eps = serializers.FloatField(min_value=0, default=0.1)

    def validate_d_values(self, value):
        if 0 in value:
            raise serializers.ValidationError("dilations must be nonzero")
        return value


class ApSearchConfigSerializer(ExperimentConfigSerializer):
    s_gens = _positive_list(GeneratorField())


class ShiftGrowthConfigSerializer(ExperimentConfigSerializer):
    a_gens = _positive_list(GeneratorField())
    s_gens = _positive_list(GeneratorField())
    alphas = _positive_list(serializers.FloatField(min_value=0, max_value=1 / 6), default=[0.1])
    growth_levels = _positive_list(serializers.FloatField(min_value=0), default=[1.0, 2.0, 4.0, 8.0])
    shift_samples = serializers.IntegerField(min_value=1, required=False)


class TlScanConfigSerializer(ExperimentConfigSerializer):
    f_gens = _positive_list(GeneratorField(), default=["pow:3,64"])
    i_gen = GeneratorField(required=False)
    j_max = serializers.IntegerField(min_value=0, max_value=6, default=2)
    eps = serializers.FloatField(min_value=0, default=0.1)


class IncidenceConfigSerializer(ExperimentConfigSerializer):
    f_gen = GeneratorField()
    b_gens = _positive_list(GeneratorField())
    c_gen = GeneratorField()
    delta = serializers.FloatField(min_value=0, default=0.0)


class ProductGrowthConfigSerializer(ExperimentConfigSerializer):
    a_gens = _positive_list(GeneratorField())
    shifts = _positive_list(serializers.IntegerField())
    m_values = _positive_list(serializers.IntegerField(min_value=1, max_value=3), default=[1])

    def validate_shifts(self, value):
        if 0 in value:
            raise serializers.ValidationError("shifts must be nonzero")
        return value


class IdentitiesConfigSerializer(ExperimentConfigSerializer):
    weights = serializers.IntegerField(min_value=1, default=3)
    support_max = serializers.IntegerField(min_value=1, default=30)
    samples = serializers.IntegerField(min_value=100, default=10000)
    gcd_alphas = _positive_list(serializers.FloatField(), default=[0.6, 0.75, 1.0])
    t_max = serializers.IntegerField(min_value=1, default=10**4)
    z_values = _positive_list(serializers.IntegerField(min_value=1), default=[10, 30])
    moment_ls = _positive_list(serializers.IntegerField(min_value=1), default=[1, 2])
    euler_alphas = _positive_list(serializers.FloatField(), default=[0.5, 0.75])
    radziwill_n = serializers.IntegerField(min_value=3, default=1000)

    def validate_gcd_alphas(self, value):
        if any(2 * alpha <= 1 for alpha in value):
            raise serializers.ValidationError("gcd sums need alpha > 1/2")
        return value

    def validate_euler_alphas(self, value):
        if any(alpha <= 0 for alpha in value):
            raise serializers.ValidationError("alpha must be positive")
        return value


CONFIG_SERIALIZERS = {
    ExperimentKind.REPULSION: RepulsionConfigSerializer,
    ExperimentKind.AP_SEARCH: ApSearchConfigSerializer,
    ExperimentKind.SHIFT_GROWTH: ShiftGrowthConfigSerializer,
    ExperimentKind.TL_SCAN: TlScanConfigSerializer,
    ExperimentKind.INCIDENCE: IncidenceConfigSerializer,
    ExperimentKind.PRODUCT_GROWTH: ProductGrowthConfigSerializer,
    ExperimentKind.IDENTITIES: IdentitiesConfigSerializer,
}


class ResultRecordSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=ExperimentKind.choices)
    params = serializers.DictField()
    measured = serializers.DictField()
    bounds = serializers.ListField(child=serializers.DictField(), default=list)
    seed = serializers.IntegerField(allow_null=True, required=False, default=None)
    duration_ms = serializers.FloatField(allow_null=True, required=False, default=None)
