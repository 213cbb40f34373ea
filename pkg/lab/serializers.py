from fractions import Fraction

from rest_framework import serializers

from averaging.domain import FAMILIES

MODES = ('exact', 'float')
DUMP_KINDS = ('density', 'mu', 'eta')
FAULTS = ('', 'eta')


class RunConfigSerializer(serializers.Serializer):
    """Validates a merged run configuration (file values plus flag overrides)."""
    seed = serializers.IntegerField(min_value=0)
    rank = serializers.IntegerField(min_value=2)
    mode = serializers.ChoiceField(choices=MODES)
    cap_sphere = serializers.IntegerField(min_value=1)
    out = serializers.CharField(allow_blank=True)

    # converge
    nmax = serializers.IntegerField(min_value=1)
    p = serializers.CharField()
    action = serializers.CharField()
    density = serializers.CharField()
    family = serializers.ChoiceField(choices=FAMILIES)
    observable = serializers.CharField()
    prefix = serializers.CharField(allow_blank=True)
    timing = serializers.BooleanField()

    # identities / covering / dump_measure
    samples = serializers.IntegerField(min_value=1)
    inject_fault = serializers.ChoiceField(choices=FAULTS, allow_blank=True)
    instances = serializers.IntegerField(min_value=0)
    max_points = serializers.IntegerField(min_value=2)
    kind = serializers.ChoiceField(choices=DUMP_KINDS)
    n = serializers.IntegerField(min_value=0)

    def validate_p(self, value):
        """'inf' or a rational exponent >= 1."""
        text = value.strip().lower()
        if text in ('inf', 'infinity'):
            return float('inf')
        try:
            p = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise serializers.ValidationError("p must be a rational number >= 1 or 'inf'")
        if p < 1:
            raise serializers.ValidationError("p must be >= 1")
        return p

    def validate(self, data):
        if data['kind'] == 'eta' and data['n'] < 1:
            raise serializers.ValidationError({'n': "eta dumps need n >= 1"})
        return data
