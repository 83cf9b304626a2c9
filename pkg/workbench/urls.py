from django.urls import path, include
from . import views
from rest_framework.routers import DefaultRouter

router = DefaultRouter()
router.register('prismatoids', views.StoredPrismatoidViewSet, basename='prismatoid')
router.register('anneal-runs', views.AnnealRecordViewSet, basename='anneal-run')
router.register('spheres', views.SphereRecordViewSet, basename='sphere')


urlpatterns = [
	path('', include(router.urls)),
]
