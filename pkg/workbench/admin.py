from django.contrib import admin
from .models import StoredPrismatoid, AnnealRecord, SphereRecord
# Register your models here.

admin.site.register(StoredPrismatoid)
admin.site.register(AnnealRecord)
admin.site.register(SphereRecord)
