from rest_framework import serializers

from .exceptions import WorkbenchError
from .formats import parse_prismatoid_text
from .models import StoredPrismatoid, AnnealRecord, SphereRecord


class StoredPrismatoidSerializer(serializers.ModelSerializer):
    class Meta:
        model = StoredPrismatoid
        fields = ('id', 'name', 'slug', 'description', 'source', 'dim', 'vertex_count',
                  'facet_count', 'width', 'layer_vector', 'excess', 'non_dstep',
                  'certificate', 'created_at', 'updated_at')
        read_only_fields = ('slug', 'dim', 'vertex_count', 'facet_count', 'width',
                            'layer_vector', 'excess', 'non_dstep', 'certificate',
                            'created_at', 'updated_at')

    def validate_source(self, value):
        try:
            parse_prismatoid_text(value)
        except WorkbenchError as e:
            raise serializers.ValidationError(f"Invalid prismatoid: {e}")
        return value


class StoredPrismatoidListSerializer(serializers.ModelSerializer):
    class Meta:
        model = StoredPrismatoid
        fields = ('id', 'name', 'slug', 'vertex_count', 'facet_count', 'width',
                  'layer_vector', 'non_dstep')


class AnnealRequestSerializer(serializers.Serializer):
    seed = serializers.IntegerField(default=0)
    iterations = serializers.IntegerField(min_value=0, max_value=100000, default=1000)
    t0 = serializers.FloatField(required=False)
    rate = serializers.FloatField(required=False)
    epsilon = serializers.FloatField(required=False)
    min_width = serializers.IntegerField(required=False, min_value=2)

    def validate_rate(self, value):
        if not 0 < value < 1:
            raise serializers.ValidationError("rate must lie strictly between 0 and 1")
        return value

    def validate_t0(self, value):
        if value <= 0:
            raise serializers.ValidationError("t0 must be positive")
        return value

    def validate_epsilon(self, value):
        if value <= 0:
            raise serializers.ValidationError("epsilon must be positive")
        return value


class DStepRequestSerializer(serializers.Serializer):
    shell = serializers.BooleanField(default=False)
    diameter = serializers.BooleanField(default=True)


class AnnealRecordSerializer(serializers.ModelSerializer):
    start = serializers.SlugRelatedField(slug_field='slug', read_only=True)

    class Meta:
        model = AnnealRecord
        fields = ('id', 'start', 'seed', 't0', 'rate', 'iterations', 'epsilon', 'min_width',
                  'accepted', 'rejected', 'constraint_rejections', 'best_vertex_count',
                  'best_facet_count', 'best_width', 'best_step', 'best_source', 'trace',
                  'created_at')
        read_only_fields = fields


class SphereRecordSerializer(serializers.ModelSerializer):
    start = serializers.SlugRelatedField(slug_field='slug', read_only=True)

    class Meta:
        model = SphereRecord
        fields = ('id', 'start', 'vertex_count', 'dimension', 'facet_count', 'distance',
                  'diameter', 'non_hirsch', 'sphere_source', 'certificate', 'created_at')
        read_only_fields = fields
