import logging

from django_filters.rest_framework import DjangoFilterBackend
from rest_framework import viewsets, filters, status
from rest_framework.decorators import action
from rest_framework.exceptions import ValidationError
from rest_framework.permissions import IsAuthenticated, AllowAny
from rest_framework.response import Response

from .annealer import AnnealConfig, anneal_run
from .dstep_builder import build_nonhirsch_sphere
from .exceptions import WorkbenchError
from .models import StoredPrismatoid, AnnealRecord, SphereRecord
from .reports import certificate_report, pattern_report, stats_report
from .serializers import (
    StoredPrismatoidSerializer, StoredPrismatoidListSerializer, AnnealRequestSerializer,
    DStepRequestSerializer, AnnealRecordSerializer, SphereRecordSerializer,
)

logger = logging.getLogger(__name__)


class StoredPrismatoidViewSet(viewsets.ModelViewSet):
    queryset = StoredPrismatoid.objects.all()
    filter_backends = [DjangoFilterBackend, filters.SearchFilter, filters.OrderingFilter]
    search_fields = ['name', 'description']
    filterset_fields = {
        'dim': ['exact'],
        'vertex_count': ['exact', 'gte', 'lte'],
        'width': ['gte', 'lte'],
        'non_dstep': ['exact'],
        'certificate': ['exact'],
    }
    ordering_fields = ['name', 'vertex_count', 'facet_count', 'width', 'created_at']
    ordering = ['name']
    lookup_field = 'slug'

    def get_serializer_class(self):
        if self.action == 'list':
            return StoredPrismatoidListSerializer
        return StoredPrismatoidSerializer

    def get_permissions(self):
        if self.action in ['create', 'update', 'partial_update', 'destroy', 'anneal', 'dstep']:
            permission_classes = [IsAuthenticated]
        else:
            permission_classes = [AllowAny]
        return [permission() for permission in permission_classes]

    def _load(self):
        try:
            return self.get_object().prismatoid()
        except WorkbenchError as e:
            raise ValidationError({'status': 'error', 'message': str(e)})

    @action(detail=True, methods=['GET'])
    def stats(self, request, slug=None):
        return Response(stats_report(self._load()))

    @action(detail=True, methods=['GET'])
    def pattern(self, request, slug=None):
        return Response(pattern_report(self._load()))

    @action(detail=True, methods=['GET'])
    def certificate(self, request, slug=None):
        return Response(certificate_report(self._load()))

    @action(detail=True, methods=['POST'])
    def anneal(self, request, slug=None):
        stored = self.get_object()
        serializer = AnnealRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        params = serializer.validated_data
        try:
            config = AnnealConfig.from_settings(
                t0=params.get('t0'),
                rate=params.get('rate'),
                iterations=params['iterations'],
                epsilon=params.get('epsilon'),
                min_width=params.get('min_width'),
            )
            run = anneal_run(stored.prismatoid(), config, seed=params['seed'])
        except WorkbenchError as e:
            raise ValidationError({'status': 'error', 'message': str(e)})
        record = AnnealRecord.from_run(stored, run)
        logger.info("stored anneal run %s for %s", record.pk, stored.slug)
        return Response(AnnealRecordSerializer(record).data, status=status.HTTP_201_CREATED)

    @action(detail=True, methods=['POST'])
    def dstep(self, request, slug=None):
        stored = self.get_object()
        serializer = DStepRequestSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        try:
            certificate = build_nonhirsch_sphere(
                stored.prismatoid(),
                shell=serializer.validated_data['shell'],
                measure_diameter=serializer.validated_data['diameter'],
            )
        except WorkbenchError as e:
            raise ValidationError({'status': 'error', 'message': str(e)})
        record = SphereRecord.from_certificate(stored, certificate)
        return Response(SphereRecordSerializer(record).data, status=status.HTTP_201_CREATED)


class AnnealRecordViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = AnnealRecord.objects.select_related('start')
    serializer_class = AnnealRecordSerializer
    filter_backends = [DjangoFilterBackend, filters.OrderingFilter]
    filterset_fields = {
        'start__slug': ['exact'],
        'seed': ['exact'],
        'best_vertex_count': ['exact', 'lte'],
    }
    ordering_fields = ['best_vertex_count', 'created_at']


class SphereRecordViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = SphereRecord.objects.select_related('start')
    serializer_class = SphereRecordSerializer
    filter_backends = [DjangoFilterBackend, filters.OrderingFilter]
    filterset_fields = {
        'start__slug': ['exact'],
        'non_hirsch': ['exact'],
    }
    ordering_fields = ['vertex_count', 'distance', 'created_at']
